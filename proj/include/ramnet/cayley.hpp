#pragma once
// Colored Cayley multigraphs on PSL(2, F_N). Vertices are group elements;
// color g contributes the arcs v -> v * s for every generator image s of that
// color. Generator multisets are closed under inversion, so the arc multiset
// is symmetric and the graph is undirected and regular of degree
// (#generators) per color.
#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ramnet/psl2.hpp"

namespace ramnet::cayley {

struct Arc {
    uint32_t to;
    uint16_t color;
    uint16_t gen;  // generator index within the color
};

struct ColorClass {
    std::string name;
    std::vector<Mat2> mats;          // det-1 canonical generator matrices
    std::vector<uint32_t> gen_elts;  // group indices of the generators
};

class ColoredCayleyGraph {
  public:
    ColoredCayleyGraph(const GroupContext& ctx, std::vector<ColorClass> colors)
        : n_(ctx.size()), colors_(std::move(colors)) {
        adj_.resize(n_);
        for (uint16_t ci = 0; ci < colors_.size(); ++ci) {
            auto& col = colors_[ci];
            if (col.mats.size() > 0xffff)
                throw std::invalid_argument("ColoredCayleyGraph: too many generators");
            col.gen_elts.clear();
            for (const Mat2& s : col.mats) {
                uint32_t idx = ctx.locate(s);
                if (idx == ctx.identity())
                    throw std::invalid_argument(
                        "ColoredCayleyGraph: generator reduces to a scalar");
                col.gen_elts.push_back(idx);
            }
            for (uint16_t gi = 0; gi < col.mats.size(); ++gi) {
                const Mat2& s = col.mats[gi];
                for (uint32_t v = 0; v < n_; ++v) {
                    uint32_t w = ctx.locate(mat_mul(ctx.modulus(), ctx.element(v), s));
                    adj_[v].push_back({w, ci, gi});
                }
            }
        }
        for (auto& list : adj_)
            std::sort(list.begin(), list.end(), [](const Arc& x, const Arc& y) {
                return std::tie(x.color, x.to, x.gen) < std::tie(y.color, y.to, y.gen);
            });
        check_symmetry();
    }

    uint32_t order() const { return n_; }
    size_t num_colors() const { return colors_.size(); }
    const std::vector<ColorClass>& colors() const { return colors_; }
    const std::vector<Arc>& arcs(uint32_t v) const { return adj_[v]; }
    uint32_t degree(uint32_t v, uint16_t color) const {
        uint32_t d = 0;
        for (const Arc& a : adj_[v]) d += a.color == color;
        return d;
    }
    // Degree of every vertex in one color class (throws if not regular).
    uint32_t regular_degree(uint16_t color) const {
        uint32_t d = degree(0, color);
        for (uint32_t v = 1; v < n_; ++v)
            if (degree(v, color) != d)
                throw std::logic_error("regular_degree: color class is not regular");
        return d;
    }

    // Neighbors restricted to a subset of colors (all colors if mask empty).
    std::vector<uint32_t> neighbors(uint32_t v, const std::vector<uint16_t>& colors = {}) const {
        std::vector<uint32_t> out;
        for (const Arc& a : adj_[v])
            if (colors.empty() ||
                std::find(colors.begin(), colors.end(), a.color) != colors.end())
                out.push_back(a.to);
        return out;
    }

  private:
    // Arc multiset must be symmetric per color: count(v->w) == count(w->v).
    void check_symmetry() const {
        for (uint32_t v = 0; v < n_; ++v)
            for (const Arc& a : adj_[v]) {
                auto cnt = [this](uint32_t x, uint32_t y, uint16_t c) {
                    uint32_t k = 0;
                    for (const Arc& e : adj_[x]) k += (e.to == y && e.color == c);
                    return k;
                };
                if (cnt(v, a.to, a.color) != cnt(a.to, v, a.color))
                    throw std::logic_error("ColoredCayleyGraph: asymmetric arc multiset");
            }
    }

    uint32_t n_;
    std::vector<ColorClass> colors_;
    std::vector<std::vector<Arc>> adj_;
};

// ------------------------------------------------------- square property --
// Matrix-level check that red and blue generator families commute up to the
// recorded index swap: rho(red_i) rho(blue_j) = rho(blue_j2) rho(red_i2) in
// PSL(2, F_N). Scalar units vanish projectively, so the identity is exact.
struct SquareCheckReport {
    size_t pairs{0};
    size_t mismatches{0};
    bool ok() const { return mismatches == 0 && pairs > 0; }
};

template <class Table>
SquareCheckReport check_square_property_table(const GroupContext& ctx,
                                              const std::vector<Mat2>& red,
                                              const std::vector<Mat2>& blue,
                                              const Table& table) {
    SquareCheckReport rep;
    const uint32_t N = ctx.modulus();
    for (size_t i = 0; i < red.size(); ++i)
        for (size_t j = 0; j < blue.size(); ++j) {
            const auto& e = table.at(i, j);
            Mat2 lhs = canon_psl2(N, mat_mul(N, red[i], blue[j]));
            Mat2 rhs = canon_psl2(N, mat_mul(N, blue[e.j2], red[e.i2]));
            ++rep.pairs;
            rep.mismatches += !(lhs == rhs);
        }
    return rep;
}

// Search mode: no table given; every product red_i * blue_j must admit at
// least one completion blue_j2 * red_i2, found by scanning.
inline SquareCheckReport check_square_property_search(const GroupContext& ctx,
                                                      const std::vector<Mat2>& red,
                                                      const std::vector<Mat2>& blue) {
    SquareCheckReport rep;
    const uint32_t N = ctx.modulus();
    std::map<std::array<uint32_t, 4>, bool> completions;
    for (const Mat2& b : blue)
        for (const Mat2& r : red) {
            Mat2 m = canon_psl2(N, mat_mul(N, b, r));
            completions[{m.a, m.b, m.c, m.d}] = true;
        }
    for (const Mat2& r : red)
        for (const Mat2& b : blue) {
            Mat2 m = canon_psl2(N, mat_mul(N, r, b));
            ++rep.pairs;
            rep.mismatches += !completions.count({m.a, m.b, m.c, m.d});
        }
    return rep;
}

// ------------------------------------------------------------ BFS analysis --
struct ComponentReport {
    uint32_t num_components{0};
    bool connected{false};
    bool bipartite{false};
    std::vector<uint32_t> component_of;        // vertex -> component id
    std::vector<int64_t> component_diameters;  // exact, one per component
    // Whole-graph diameter: defined only when connected (and computed).
    int64_t diameter() const {
        return connected && !component_diameters.empty() ? component_diameters[0] : -1;
    }
};

// BFS over a chosen color subset: components, 2-colorability, and (optionally)
// the exact diameter of every component via BFS from each vertex.
inline ComponentReport analyze_components(const ColoredCayleyGraph& g,
                                          const std::vector<uint16_t>& colors = {},
                                          bool want_diameter = true) {
    const uint32_t n = g.order();
    std::vector<int8_t> side(n, -1);
    ComponentReport rep;
    rep.bipartite = true;
    rep.component_of.assign(n, 0);
    for (uint32_t s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        uint32_t comp = rep.num_components++;
        side[s] = 0;
        rep.component_of[s] = comp;
        std::queue<uint32_t> q;
        q.push(s);
        while (!q.empty()) {
            uint32_t v = q.front();
            q.pop();
            for (uint32_t w : g.neighbors(v, colors)) {
                if (side[w] == -1) {
                    side[w] = static_cast<int8_t>(1 - side[v]);
                    rep.component_of[w] = comp;
                    q.push(w);
                } else if (side[w] == side[v]) {
                    rep.bipartite = false;  // odd cycle, or a loop when w == v
                }
            }
        }
    }
    rep.connected = rep.num_components == 1;
    if (want_diameter) {
        rep.component_diameters.assign(rep.num_components, 0);
        std::vector<int32_t> dist(n);
        for (uint32_t s = 0; s < n; ++s) {
            std::fill(dist.begin(), dist.end(), -1);
            dist[s] = 0;
            std::queue<uint32_t> q;
            q.push(s);
            while (!q.empty()) {
                uint32_t v = q.front();
                q.pop();
                for (uint32_t w : g.neighbors(v, colors))
                    if (dist[w] == -1) {
                        dist[w] = dist[v] + 1;
                        q.push(w);
                    }
            }
            auto& diam = rep.component_diameters[rep.component_of[s]];
            for (uint32_t v = 0; v < n; ++v)
                if (dist[v] >= 0) diam = std::max<int64_t>(diam, dist[v]);
        }
    }
    return rep;
}

// Two-coloring of a connected graph: side vector, or nullopt when an odd
// cycle (or loop) exists.
inline std::optional<std::vector<int8_t>> bipartition(const ColoredCayleyGraph& g,
                                                      const std::vector<uint16_t>& colors = {}) {
    const uint32_t n = g.order();
    std::vector<int8_t> side(n, -1);
    for (uint32_t s = 0; s < n; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::queue<uint32_t> q;
        q.push(s);
        while (!q.empty()) {
            uint32_t v = q.front();
            q.pop();
            for (uint32_t w : g.neighbors(v, colors)) {
                if (side[w] == -1) {
                    side[w] = static_cast<int8_t>(1 - side[v]);
                    q.push(w);
                } else if (side[w] == side[v]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

// Sentinel for "no cycle" (acyclic color class): girth is infinite.
inline constexpr int64_t kInfiniteGirth = -1;

// Shortest cycle length, or kInfiniteGirth. Per-vertex BFS that never walks
// straight back along the arc it arrived by (parallel arcs and loops are
// still seen as cycles of length 2 and 1).
inline int64_t girth(const ColoredCayleyGraph& g, const std::vector<uint16_t>& colors = {}) {
    const uint32_t n = g.order();
    int64_t best = -1;
    auto consider = [&best](int64_t len) {
        if (best < 0 || len < best) best = len;
    };
    // Parallel arcs / loops first: they dominate any BFS cycle.
    for (uint32_t v = 0; v < n; ++v) {
        std::map<uint32_t, int> seen;
        for (const Arc& a : g.arcs(v)) {
            if (!colors.empty() &&
                std::find(colors.begin(), colors.end(), a.color) == colors.end())
                continue;
            if (a.to == v) consider(1);
            ++seen[a.to];
        }
        for (auto& [w, k] : seen)
            if (w != v && k >= 2) consider(2);  // parallel edges form a 2-cycle
    }
    if (best > 0 && best <= 2) return best;
    std::vector<int32_t> dist(n), parent(n);
    for (uint32_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        parent[s] = -1;
        std::queue<uint32_t> q;
        q.push(s);
        while (!q.empty()) {
            uint32_t v = q.front();
            q.pop();
            if (best > 0 && 2 * dist[v] >= best) continue;
            for (uint32_t w : g.neighbors(v, colors)) {
                if (w == static_cast<uint32_t>(parent[v]) || w == v) continue;
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = static_cast<int32_t>(v);
                    q.push(w);
                } else if (dist[w] >= dist[v]) {
                    consider(static_cast<int64_t>(dist[v]) + dist[w] + 1);
                }
            }
        }
    }
    return best;
}

struct GirthDiameter {
    int64_t girth{kInfiniteGirth};
    int64_t diameter{-1};
    bool diameter_exact{false};  // false: BFS double-sweep lower bound
};

// Girth plus diameter: exact diameter for n <= exact_cap (BFS from every
// vertex), otherwise a lower bound from a double BFS sweep, flagged as such.
inline GirthDiameter girth_and_diameter(const ColoredCayleyGraph& g,
                                        const std::vector<uint16_t>& colors = {},
                                        uint32_t exact_cap = 5000) {
    GirthDiameter out;
    out.girth = girth(g, colors);
    const uint32_t n = g.order();
    auto bfs_far = [&](uint32_t s, int64_t& ecc) {
        std::vector<int32_t> dist(n, -1);
        dist[s] = 0;
        std::queue<uint32_t> q;
        q.push(s);
        uint32_t far = s;
        ecc = 0;
        while (!q.empty()) {
            uint32_t v = q.front();
            q.pop();
            for (uint32_t w : g.neighbors(v, colors))
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    if (dist[w] > ecc) {
                        ecc = dist[w];
                        far = w;
                    }
                    q.push(w);
                }
        }
        for (uint32_t v = 0; v < n; ++v)
            if (dist[v] == -1) return std::optional<uint32_t>{};  // disconnected
        return std::optional<uint32_t>{far};
    };
    if (n <= exact_cap) {
        auto comp = analyze_components(g, colors, true);
        out.diameter = comp.diameter();
        out.diameter_exact = comp.connected;
        return out;
    }
    int64_t e1 = 0, e2 = 0;
    auto far1 = bfs_far(0, e1);
    if (!far1) return out;  // disconnected: leave diameter = -1
    bfs_far(*far1, e2);
    out.diameter = std::max(e1, e2);
    out.diameter_exact = false;
    return out;
}

// --------------------------------------------------- graph-level square audit --
// Walks actual edges: for each audited vertex v and each pair of a red arc
// (v -> x via s) and a blue arc (v -> y via t), some pair (blue t' at x,
// red s' at y) must close the square x -> z <- y. Commutation forces at
// least one closure; extra quadrilaterals through other generators are
// legitimate (and typical once degrees approach sqrt(n)), so multi_closure
// is informational only.
struct SquareAuditReport {
    size_t vertices_audited{0};
    size_t pairs_checked{0};
    size_t missing{0};
    size_t multi_closure{0};
    bool ok() const { return pairs_checked > 0 && missing == 0; }
};

inline SquareAuditReport verify_square_property(const ColoredCayleyGraph& g, uint16_t red,
                                                uint16_t blue, size_t sample = 0,
                                                uint64_t seed = 1) {
    if (red == blue || red >= g.num_colors() || blue >= g.num_colors())
        throw std::invalid_argument("verify_square_property: need two distinct colors");
    std::vector<uint32_t> verts;
    if (sample == 0 || sample >= g.order()) {
        verts.resize(g.order());
        for (uint32_t v = 0; v < g.order(); ++v) verts[v] = v;
    } else {
        std::mt19937_64 rng(seed);
        for (size_t i = 0; i < sample; ++i)
            verts.push_back(static_cast<uint32_t>(rng() % g.order()));
    }
    SquareAuditReport rep;
    for (uint32_t v : verts) {
        ++rep.vertices_audited;
        for (const Arc& ar : g.arcs(v)) {
            if (ar.color != red) continue;
            for (const Arc& ab : g.arcs(v)) {
                if (ab.color != blue) continue;
                ++rep.pairs_checked;
                // Arcs are sorted by (color, to), so the blue arcs of ar.to
                // and the red arcs of ab.to are contiguous runs ordered by
                // destination: count common destinations by merging.
                const auto& ax = g.arcs(ar.to);
                const auto& ay = g.arcs(ab.to);
                size_t closures = 0, ix = 0, iy = 0;
                while (ix < ax.size() && ax[ix].color != blue) ++ix;
                while (iy < ay.size() && ay[iy].color != red) ++iy;
                while (ix < ax.size() && iy < ay.size() && ax[ix].color == blue &&
                       ay[iy].color == red) {
                    if (ax[ix].to < ay[iy].to)
                        ++ix;
                    else if (ay[iy].to < ax[ix].to)
                        ++iy;
                    else {
                        size_t cx = 0, cy = 0;
                        uint32_t w = ax[ix].to;
                        while (ix < ax.size() && ax[ix].color == blue && ax[ix].to == w) ++ix, ++cx;
                        while (iy < ay.size() && ay[iy].color == red && ay[iy].to == w) ++iy, ++cy;
                        closures += cx * cy;
                    }
                }
                if (closures == 0) ++rep.missing;
                if (closures > 1) ++rep.multi_closure;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- exports --
// Plain edge list, one undirected edge per line: "u v color" (0-based).
inline std::string export_edge_list(const ColoredCayleyGraph& g) {
    std::ostringstream out;
    for (uint32_t v = 0; v < g.order(); ++v) {
        std::map<std::pair<uint32_t, uint16_t>, uint32_t> loops;
        for (const Arc& a : g.arcs(v)) {
            if (a.to > v) out << v << ' ' << a.to << ' ' << a.color << '\n';
            if (a.to == v) ++loops[{a.to, a.color}];
        }
        // A loop contributes two arcs; emit it once per pair.
        for (auto& [key, cnt] : loops)
            for (uint32_t t = 0; t < cnt / 2; ++t) out << v << ' ' << v << ' ' << key.second << '\n';
    }
    return out.str();
}

inline std::string export_dot(const ColoredCayleyGraph& g, const std::string& name = "cayley") {
    static const char* palette[] = {"red", "blue", "forestgreen", "orange", "purple", "brown"};
    std::ostringstream out;
    out << "graph " << name << " {\n  node [shape=point];\n";
    std::istringstream edges(export_edge_list(g));
    uint32_t u, v;
    uint16_t c;
    while (edges >> u >> v >> c)
        out << "  " << u << " -- " << v << " [color=" << palette[c % 6] << "];\n";
    out << "}\n";
    return out.str();
}

}  // namespace ramnet::cayley
