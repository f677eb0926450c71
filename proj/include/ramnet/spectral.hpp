#pragma once
// Spectral verification of regular graphs.
//
// Dense path: full spectrum by threshold-cyclic Jacobi rotations (no
// eigenvector accumulation). Iterative path: Lanczos with full
// reorthogonalization and explicit deflation of the known trivial
// eigenvectors (all-ones, and the bipartition sign vector when present),
// giving the extreme nontrivial eigenvalues with Ritz residual bounds.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramnet/cayley.hpp"

namespace ramnet::spectral {

using cayley::ColoredCayleyGraph;

// Dense symmetric adjacency matrix of a color subset (row-major n x n).
// Loops add 2 on the diagonal (two arcs); multi-edges accumulate.
inline std::vector<double> adjacency_matrix(const ColoredCayleyGraph& g,
                                            const std::vector<uint16_t>& colors = {}) {
    const size_t n = g.order();
    std::vector<double> A(n * n, 0.0);
    for (uint32_t v = 0; v < n; ++v)
        for (uint32_t w : g.neighbors(v, colors)) A[static_cast<size_t>(v) * n + w] += 1.0;
    return A;
}

// y = A x through the arc lists (never materializes the matrix).
inline void adjacency_apply(const ColoredCayleyGraph& g, const std::vector<uint16_t>& colors,
                            const std::vector<double>& x, std::vector<double>& y) {
    const uint32_t n = g.order();
    std::fill(y.begin(), y.end(), 0.0);
    for (uint32_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (const cayley::Arc& a : g.arcs(v)) {
            if (!colors.empty() &&
                std::find(colors.begin(), colors.end(), a.color) == colors.end())
                continue;
            acc += x[a.to];
        }
        y[v] = acc;
    }
}

// ------------------------------------------------------------------ Jacobi --
// Threshold-cyclic Jacobi on a symmetric matrix (destroys A). Returns all
// eigenvalues in descending order; optionally accumulates eigenvectors as
// columns of V (row-major n x n).
inline std::vector<double> jacobi_eigenvalues(std::vector<double>& A, size_t n,
                                              std::vector<double>* V = nullptr,
                                              double tol = 1e-12, int max_sweeps = 60) {
    auto at = [&A, n](size_t i, size_t j) -> double& { return A[i * n + j]; };
    if (V) {
        V->assign(n * n, 0.0);
        for (size_t i = 0; i < n; ++i) (*V)[i * n + i] = 1.0;
    }
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) norm += at(i, j) * at(i, j);
    norm = std::sqrt(norm);
    if (norm == 0.0) norm = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += 2.0 * at(i, j) * at(i, j);
        if (std::sqrt(off) <= tol * norm) break;
        const double thresh = sweep < 3 ? 0.2 * std::sqrt(off) / static_cast<double>(n) : 0.0;
        for (size_t p = 0; p + 1 < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (std::abs(apq) <= thresh || apq == 0.0) continue;
                double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                if (V)
                    for (size_t k = 0; k < n; ++k) {
                        double vkp = (*V)[k * n + p], vkq = (*V)[k * n + q];
                        (*V)[k * n + p] = c * vkp - s * vkq;
                        (*V)[k * n + q] = s * vkp + c * vkq;
                    }
            }
        if (sweep + 1 == max_sweeps) throw std::runtime_error("jacobi: no convergence");
    }
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return at(i, i) > at(j, j); });
    std::vector<double> vals(n);
    for (size_t i = 0; i < n; ++i) vals[i] = at(idx[i], idx[i]);
    if (V) {
        std::vector<double> W(n * n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) W[i * n + j] = (*V)[i * n + idx[j]];
        *V = std::move(W);
    }
    return vals;
}

// ----------------------------------------------------------------- Lanczos --
struct LanczosResult {
    double lambda_hi{0.0}, lambda_lo{0.0};  // extreme nontrivial eigenvalues
    double resid_hi{0.0}, resid_lo{0.0};    // Ritz residual bounds |beta * s_last|
    int iterations{0};
};

// Extreme eigenvalues of the adjacency operator orthogonally to the given
// deflation vectors (which must be exact eigenvectors, e.g. the all-ones
// vector of a regular graph). Full reorthogonalization each step.
// Non-convergence is not an exception: the caller inspects the residuals.
inline LanczosResult lanczos_extremes(const ColoredCayleyGraph& g,
                                      const std::vector<uint16_t>& colors,
                                      std::vector<std::vector<double>> deflate,
                                      double resid_tol, uint64_t seed = 12345,
                                      int max_iter = 400) {
    const size_t n = g.order();
    for (auto& u : deflate) {
        double s = 0.0;
        for (double x : u) s += x * x;
        s = std::sqrt(s);
        if (s == 0.0) throw std::invalid_argument("lanczos: zero deflation vector");
        for (double& x : u) x /= s;
    }
    auto project_out = [&](std::vector<double>& w) {
        for (const auto& u : deflate) {
            double dot = 0.0;
            for (size_t i = 0; i < n; ++i) dot += u[i] * w[i];
            for (size_t i = 0; i < n; ++i) w[i] -= dot * u[i];
        }
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;  // T diagonal / off-diagonal
    std::vector<double> v(n), w(n);
    for (double& x : v) x = gauss(rng);
    project_out(v);
    {
        double s = 0.0;
        for (double x : v) s += x * x;
        s = std::sqrt(s);
        if (s < 1e-12) throw std::runtime_error("lanczos: degenerate start vector");
        for (double& x : v) x /= s;
    }

    LanczosResult res;
    const int cap = static_cast<int>(std::min<size_t>(max_iter, n));
    for (int k = 0; k < cap; ++k) {
        basis.push_back(v);
        adjacency_apply(g, colors, v, w);
        double a = 0.0;
        for (size_t i = 0; i < n; ++i) a += v[i] * w[i];
        alpha.push_back(a);
        for (size_t i = 0; i < n; ++i) w[i] -= a * v[i];
        if (k > 0)
            for (size_t i = 0; i < n; ++i) w[i] -= beta[k - 1] * basis[k - 1][i];
        project_out(w);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) {
                double dot = 0.0;
                for (size_t i = 0; i < n; ++i) dot += u[i] * w[i];
                for (size_t i = 0; i < n; ++i) w[i] -= dot * u[i];
            }
        double b = 0.0;
        for (double x : w) b += x * x;
        b = std::sqrt(b);
        beta.push_back(b);
        res.iterations = k + 1;

        const size_t m = alpha.size();
        bool breakdown = b < 1e-10;
        if (m >= 8 || breakdown || k + 1 == cap) {
            // Ritz pairs of the m x m tridiagonal.
            std::vector<double> T(m * m, 0.0);
            for (size_t i = 0; i < m; ++i) {
                T[i * m + i] = alpha[i];
                if (i + 1 < m) T[i * m + i + 1] = T[(i + 1) * m + i] = beta[i];
            }
            std::vector<double> S;
            auto theta = jacobi_eigenvalues(T, m, &S);
            auto resid = [&](size_t col) { return std::abs(b * S[(m - 1) * m + col]); };
            res.lambda_hi = theta.front();
            res.lambda_lo = theta.back();
            res.resid_hi = resid(0);
            res.resid_lo = resid(m - 1);
            if (breakdown) {  // Krylov space exhausted: Ritz values are exact
                res.resid_hi = res.resid_lo = 0.0;
                return res;
            }
            if (res.resid_hi <= resid_tol && res.resid_lo <= resid_tol) return res;
        }
        if (b < 1e-10) return res;
        for (size_t i = 0; i < n; ++i) v[i] = w[i] / b;
    }
    return res;  // best effort; residuals tell the caller how far it got
}

// ------------------------------------------------------------- the verdict --
struct RamanujanVerdict {
    double degree{0.0};
    double bound{0.0};          // 2 sqrt(r-1)
    double max_nontrivial{0.0}; // max |lambda| over nontrivial eigenvalues
    bool bipartite{false};
    bool ramanujan{false};
};

// Dense form: checks the trivial eigenvalue r is present (and -r iff
// bipartite), excludes one copy of each, and bounds the rest.
inline RamanujanVerdict ramanujan_verdict(std::vector<double> spectrum, double r,
                                          bool bipartite, double tol = 1e-6) {
    RamanujanVerdict v;
    v.degree = r;
    v.bound = 2.0 * std::sqrt(r - 1.0);
    v.bipartite = bipartite;
    std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
    if (spectrum.empty() || std::abs(spectrum.front() - r) > tol)
        throw std::invalid_argument("ramanujan_verdict: top eigenvalue is not the degree");
    spectrum.erase(spectrum.begin());
    if (bipartite) {
        if (std::abs(spectrum.back() + r) > tol)
            throw std::invalid_argument("ramanujan_verdict: bipartite graph lacks -r");
        spectrum.pop_back();
    }
    for (double x : spectrum) v.max_nontrivial = std::max(v.max_nontrivial, std::abs(x));
    v.ramanujan = v.max_nontrivial <= v.bound + tol;
    return v;
}

inline RamanujanVerdict ramanujan_verdict(const LanczosResult& lz, double r, bool bipartite,
                                          double tol = 1e-6) {
    RamanujanVerdict v;
    v.degree = r;
    v.bound = 2.0 * std::sqrt(r - 1.0);
    v.bipartite = bipartite;
    v.max_nontrivial = std::max(std::abs(lz.lambda_hi), std::abs(lz.lambda_lo));
    v.ramanujan = v.max_nontrivial <= v.bound + tol;
    return v;
}

// ------------------------------------------------------------------ report --
struct SpectralReport {
    std::string color;   // audited color label ("all" for the whole graph)
    std::string method;  // "dense" or "iterative"
    uint32_t n{0};
    uint32_t r{0};  // regularity of the audited color set
    bool bipartite{false};
    std::vector<double> spectrum;      // dense only, descending
    double lambda_max_nontrivial{0.0};
    double lambda_min{0.0};
    double cheeger_lower{0.0};  // (r - lambda2) / 2
    int64_t girth{cayley::kInfiniteGirth};
    int64_t diameter{-1};
    bool diameter_exact{false};
    double resid_hi{0.0}, resid_lo{0.0};
    RamanujanVerdict verdict;
    double residual() const { return std::max(resid_hi, resid_lo); }
};

inline std::string color_label(const ColoredCayleyGraph& g,
                               const std::vector<uint16_t>& colors) {
    if (colors.empty()) return "all";
    std::string s;
    for (uint16_t c : colors) s += (s.empty() ? "" : "+") + g.colors()[c].name;
    return s;
}

inline uint32_t subset_degree(const ColoredCayleyGraph& g,
                              const std::vector<uint16_t>& colors) {
    uint32_t r = 0;
    for (uint16_t c = 0; c < g.num_colors(); ++c)
        if (colors.empty() || std::find(colors.begin(), colors.end(), c) != colors.end())
            r += g.regular_degree(c);
    return r;
}

inline void fill_shape(SpectralReport& rep, const ColoredCayleyGraph& g,
                       const std::vector<uint16_t>& colors) {
    rep.color = color_label(g, colors);
    rep.n = g.order();
    rep.r = subset_degree(g, colors);
    auto gd = cayley::girth_and_diameter(g, colors);
    rep.girth = gd.girth;
    rep.diameter = gd.diameter;
    rep.diameter_exact = gd.diameter_exact;
}

// Full spectrum; refuses above the dense cap and points at the iterative path.
inline SpectralReport dense_report(const ColoredCayleyGraph& g,
                                   const std::vector<uint16_t>& colors = {},
                                   uint32_t dense_cap = 4000) {
    if (g.order() > dense_cap)
        throw std::length_error("dense_report: n exceeds the dense cap; use the iterative path");
    SpectralReport rep;
    rep.method = "dense";
    fill_shape(rep, g, colors);
    rep.bipartite = cayley::bipartition(g, colors).has_value();
    auto A = adjacency_matrix(g, colors);
    rep.spectrum = jacobi_eigenvalues(A, rep.n);
    rep.verdict = ramanujan_verdict(rep.spectrum, rep.r, rep.bipartite);
    std::vector<double> s = rep.spectrum;  // nontrivial extremes for the body
    s.erase(s.begin());
    if (rep.bipartite) s.pop_back();
    rep.lambda_max_nontrivial = s.empty() ? 0.0 : s.front();
    rep.lambda_min = s.empty() ? 0.0 : s.back();
    rep.cheeger_lower = (rep.r - rep.lambda_max_nontrivial) / 2.0;
    return rep;
}

inline SpectralReport lanczos_report(const ColoredCayleyGraph& g,
                                     const std::vector<uint16_t>& colors = {},
                                     double resid_rel_tol = 1e-8, uint64_t seed = 12345) {
    SpectralReport rep;
    rep.method = "iterative";
    fill_shape(rep, g, colors);
    auto side = cayley::bipartition(g, colors);
    rep.bipartite = side.has_value();
    std::vector<std::vector<double>> deflate{std::vector<double>(rep.n, 1.0)};
    if (side) {
        std::vector<double> sign(rep.n);
        for (uint32_t v = 0; v < rep.n; ++v) sign[v] = (*side)[v] == 0 ? 1.0 : -1.0;
        deflate.push_back(std::move(sign));
    }
    auto lz = lanczos_extremes(g, colors, std::move(deflate), resid_rel_tol * rep.r, seed);
    rep.lambda_max_nontrivial = lz.lambda_hi;
    rep.lambda_min = lz.lambda_lo;
    rep.resid_hi = lz.resid_hi;
    rep.resid_lo = lz.resid_lo;
    rep.cheeger_lower = (rep.r - rep.lambda_max_nontrivial) / 2.0;
    rep.verdict = ramanujan_verdict(lz, rep.r, rep.bipartite);
    return rep;
}

// Sum and sum-of-squares identities for a simple r-regular graph.
inline bool trace_identities_ok(const std::vector<double>& spectrum, double n, double r,
                                double abs_tol = 1e-6, double rel_tol = 1e-4) {
    double s1 = 0.0, s2 = 0.0;
    for (double x : spectrum) {
        s1 += x;
        s2 += x * x;
    }
    return std::abs(s1) <= abs_tol && std::abs(s2 - n * r) <= rel_tol * n * r;
}

inline std::string spectrum_csv(const SpectralReport& rep) {
    std::ostringstream out;
    out.precision(12);
    out << "index,eigenvalue\n";
    for (size_t i = 0; i < rep.spectrum.size(); ++i) out << i << ',' << rep.spectrum[i] << '\n';
    return out.str();
}

}  // namespace ramnet::spectral
