#pragma once
// Desk-scale protocol simulator on the colored networks: hop-by-hop
// transmission with a square-completion digest chain cross-checked on a
// second color, and g-way XOR dispersal over independent random walks.
// Demonstrator only — no security claims.
#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramnet/cayley.hpp"

namespace ramnet::protocol {

using Bytes = std::vector<uint8_t>;
using cayley::ColoredCayleyGraph;

// ------------------------------------------------------------------- hash --
// The one interface point to the hash function (SHA-256).
inline Bytes digest(const Bytes& data) {
    Bytes out(32);
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != 32)
        throw std::runtime_error("digest: EVP_Digest failed");
    return out;
}

// ------------------------------------------------------------------ types --
struct Hop {
    uint32_t from{0}, to{0};
    uint16_t color{0}, gen{0};  // data edge: from -> to via (color, gen)
    // Square companion on the check color: from -(color,gen)-> to -(check_color,
    // check_gen)-> z equals from -(check_color,comp_check)-> y -(color,comp_gen)-> z.
    bool has_check{false};
    uint16_t check_gen{0}, comp_check{0}, comp_gen{0};
};

struct Transmission {
    uint32_t src{0}, dst{0};
    uint16_t data_color{0}, check_color{0};
    Bytes payload;
    std::vector<Hop> path;
    std::vector<Bytes> digests;  // one per hop
    bool delivered{false};
};

struct VerifyResult {
    bool accepted{false};
    std::string reason;  // empty iff accepted
};

struct DispersalSet {
    uint32_t g{0};
    Bytes payload_xor_check;  // XOR of all shares (diagnostic)
    std::vector<Bytes> shares;
    std::vector<Transmission> routes;  // one per share
    std::vector<bool> present;         // withheld shares are marked absent
};

// ------------------------------------------------------------- primitives --
inline void append_u32(Bytes& b, uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
inline void append_u16(Bytes& b, uint16_t v) {
    b.push_back(static_cast<uint8_t>(v & 0xff));
    b.push_back(static_cast<uint8_t>(v >> 8));
}

inline Bytes edge_label(const Hop& h) {
    Bytes label;
    append_u32(label, h.from);
    append_u32(label, h.to);
    append_u16(label, h.color);
    append_u16(label, h.gen);
    label.push_back(h.has_check ? 1 : 0);
    append_u16(label, h.check_gen);
    append_u16(label, h.comp_check);
    append_u16(label, h.comp_gen);
    return label;
}

// Fixed deterministic chunking: hop k carries payload[k::hops].
inline Bytes payload_chunk(const Bytes& payload, size_t k, size_t hops) {
    Bytes chunk;
    for (size_t i = k; i < payload.size(); i += hops) chunk.push_back(payload[i]);
    return chunk;
}

inline Bytes chain_step(const Bytes& prev, const Bytes& chunk, const Bytes& label) {
    Bytes buf = prev;
    buf.insert(buf.end(), chunk.begin(), chunk.end());
    buf.insert(buf.end(), label.begin(), label.end());
    return digest(buf);
}

// Follow the unique arc (color, gen) out of v.
inline uint32_t follow(const ColoredCayleyGraph& g, uint32_t v, uint16_t color, uint16_t gen) {
    for (const cayley::Arc& a : g.arcs(v))
        if (a.color == color && a.gen == gen) return a.to;
    throw std::invalid_argument("follow: no such arc");
}

// BFS shortest path in one color; hops carry the generator used. Empty when
// src == dst; nullopt when unreachable.
inline std::optional<std::vector<Hop>> bfs_route(const ColoredCayleyGraph& g, uint32_t src,
                                                 uint32_t dst, uint16_t color) {
    const uint32_t n = g.order();
    if (src >= n || dst >= n) throw std::invalid_argument("bfs_route: vertex out of range");
    std::vector<int64_t> pred(n, -2);  // -2 unseen, else packed (prev, gen)
    pred[src] = -1;
    std::vector<uint32_t> queue{src};
    for (size_t head = 0; head < queue.size() && pred[dst] == -2; ++head) {
        uint32_t v = queue[head];
        for (const cayley::Arc& a : g.arcs(v)) {
            if (a.color != color || pred[a.to] != -2) continue;
            pred[a.to] = (static_cast<int64_t>(v) << 16) | a.gen;
            queue.push_back(a.to);
        }
    }
    if (pred[dst] == -2) return std::nullopt;
    std::vector<Hop> hops;
    for (uint32_t v = dst; v != src;) {
        auto packed = pred[v];
        auto prev = static_cast<uint32_t>(packed >> 16);
        auto gen = static_cast<uint16_t>(packed & 0xffff);
        hops.push_back({prev, v, color, gen});
        v = prev;
    }
    std::reverse(hops.begin(), hops.end());
    return hops;
}

// -------------------------------------------------------- send + verify --
// Routes the payload along a BFS path in data_color. Each hop picks a random
// check_color edge and records the square completion; the digest chain binds
// chunks to the full labels. The table must be oriented so that its first
// index runs over data_color generators and its second over check_color
// generators.
template <class Table>
Transmission send_with_cross_check(const ColoredCayleyGraph& g, const Table& table,
                                   const Bytes& payload, uint32_t src, uint32_t dst,
                                   uint16_t data_color, uint16_t check_color,
                                   uint64_t rng_seed) {
    Transmission t;
    t.src = src;
    t.dst = dst;
    t.data_color = data_color;
    t.check_color = check_color;
    t.payload = payload;
    auto route = bfs_route(g, src, dst, data_color);
    if (!route) {
        t.delivered = false;  // routing failure: disconnected pair
        return t;
    }
    std::mt19937_64 rng(rng_seed);
    const size_t blue_count = table.blue.count();
    std::uniform_int_distribution<size_t> pick(0, blue_count - 1);
    t.path = std::move(*route);
    Bytes prev(32, 0);
    for (size_t k = 0; k < t.path.size(); ++k) {
        Hop& h = t.path[k];
        h.has_check = true;
        h.check_gen = static_cast<uint16_t>(pick(rng));
        const auto& e = table.at(h.gen, h.check_gen);
        h.comp_check = static_cast<uint16_t>(e.j2);
        h.comp_gen = static_cast<uint16_t>(e.i2);
        prev = chain_step(prev, payload_chunk(payload, k, t.path.size()), edge_label(h));
        t.digests.push_back(prev);
    }
    t.delivered = true;
    return t;
}

// Receiver-side verification: audits every data edge against the adjacency,
// replays the check-channel square for every hop (both two-step walks must
// meet), re-derives the companion indices from its own table, and recomputes
// the digest chain bit-exactly.
template <class Table>
VerifyResult verify_transmission(const ColoredCayleyGraph& g, const Table& table,
                                 const Transmission& t) {
    if (!t.delivered) return {false, "not delivered"};
    if (t.path.empty() && t.src != t.dst) return {false, "empty path"};
    if (t.digests.size() != t.path.size()) return {false, "digest count mismatch"};
    uint32_t at = t.src;
    Bytes prev(32, 0);
    for (size_t k = 0; k < t.path.size(); ++k) {
        const Hop& h = t.path[k];
        if (h.from != at) return {false, "path not contiguous"};
        uint32_t to;
        try {
            to = follow(g, h.from, h.color, h.gen);
        } catch (const std::invalid_argument&) {
            return {false, "data edge not in graph"};
        }
        if (to != h.to || h.color != t.data_color) return {false, "data edge mismatch"};
        if (!h.has_check) return {false, "missing check record"};
        const auto& e = table.at(h.gen, h.check_gen);
        if (e.j2 != h.comp_check || e.i2 != h.comp_gen)
            return {false, "square completion mismatch"};
        // Replay both walks of the square on the check channel.
        uint32_t z1 = follow(g, h.to, t.check_color, h.check_gen);
        uint32_t y = follow(g, h.from, t.check_color, h.comp_check);
        uint32_t z2 = follow(g, y, t.data_color, h.comp_gen);
        if (z1 != z2) return {false, "check-channel square does not close"};
        prev = chain_step(prev, payload_chunk(t.payload, k, t.path.size()), edge_label(h));
        if (prev != t.digests[k]) return {false, "digest chain mismatch"};
        at = h.to;
    }
    if (at != t.dst) return {false, "path does not end at dst"};
    return {true, ""};
}

// -------------------------------------------------------------- dispersal --
// Plain single-color transmission (no cross-check records) along a seeded
// random walk; used to carry dispersal shares.
inline Transmission send_along_walk(const ColoredCayleyGraph& g, const Bytes& share,
                                    uint32_t src, uint16_t color, size_t walk_len,
                                    std::mt19937_64& rng) {
    Transmission t;
    t.src = src;
    t.data_color = color;
    t.check_color = color;
    t.payload = share;
    uint32_t at = src;
    std::vector<uint16_t> gens;
    for (const cayley::Arc& a : g.arcs(0))
        if (a.color == color) gens.push_back(a.gen);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (gens.empty()) throw std::invalid_argument("send_along_walk: color has no generators");
    std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
    Bytes prev(32, 0);
    for (size_t k = 0; k < walk_len; ++k) {
        Hop h;
        h.from = at;
        h.color = color;
        h.gen = gens[pick(rng)];
        h.to = follow(g, at, color, h.gen);
        prev = chain_step(prev, payload_chunk(share, k, walk_len), edge_label(h));
        t.path.push_back(h);
        t.digests.push_back(prev);
        at = h.to;
    }
    t.dst = at;
    t.delivered = true;
    return t;
}

inline VerifyResult verify_walk(const ColoredCayleyGraph& g, const Transmission& t) {
    if (!t.delivered) return {false, "not delivered"};
    if (t.digests.size() != t.path.size()) return {false, "digest count mismatch"};
    uint32_t at = t.src;
    Bytes prev(32, 0);
    for (size_t k = 0; k < t.path.size(); ++k) {
        const Hop& h = t.path[k];
        if (h.from != at) return {false, "path not contiguous"};
        uint32_t to;
        try {
            to = follow(g, h.from, h.color, h.gen);
        } catch (const std::invalid_argument&) {
            return {false, "edge not in graph"};
        }
        if (to != h.to) return {false, "edge mismatch"};
        prev = chain_step(prev, payload_chunk(t.payload, k, t.path.size()), edge_label(h));
        if (prev != t.digests[k]) return {false, "digest chain mismatch"};
        at = h.to;
    }
    if (at != t.dst) return {false, "path does not end at dst"};
    return {true, ""};
}

inline DispersalSet disperse(const ColoredCayleyGraph& g, const Bytes& payload, uint32_t shares,
                             uint64_t rng_seed, uint32_t src = 0, size_t walk_len = 16) {
    if (shares < 1) throw std::invalid_argument("disperse: need at least one share");
    DispersalSet set;
    set.g = shares;
    std::mt19937_64 rng(rng_seed);
    Bytes acc = payload;
    for (uint32_t s = 0; s + 1 < shares; ++s) {
        Bytes share(payload.size());
        for (auto& b : share) b = static_cast<uint8_t>(rng());
        for (size_t i = 0; i < acc.size(); ++i) acc[i] ^= share[i];
        set.shares.push_back(std::move(share));
    }
    set.shares.push_back(std::move(acc));  // last share completes the XOR
    set.present.assign(shares, true);
    for (uint32_t s = 0; s < shares; ++s) {
        auto color = static_cast<uint16_t>(s % g.num_colors());
        set.routes.push_back(send_along_walk(g, set.shares[s], src, color, walk_len, rng));
    }
    set.payload_xor_check.assign(payload.size(), 0);
    for (const Bytes& sh : set.shares)
        for (size_t i = 0; i < sh.size(); ++i) set.payload_xor_check[i] ^= sh[i];
    return set;
}

struct ReconstructResult {
    bool ok{false};
    Bytes payload;
    std::string error;  // identifies the missing/invalid share when !ok
};

inline ReconstructResult reconstruct(const ColoredCayleyGraph& g, const DispersalSet& set) {
    ReconstructResult out;
    if (set.shares.size() != set.g || set.routes.size() != set.g)
        return {false, {}, "share/route count mismatch"};
    for (uint32_t s = 0; s < set.g; ++s) {
        if (!set.present[s])
            return {false, {}, "missing share " + std::to_string(s) + " (color " +
                                   std::to_string(set.routes[s].data_color) + ")"};
        auto v = verify_walk(g, set.routes[s]);
        if (!v.accepted)
            return {false, {}, "share " + std::to_string(s) + " route invalid: " + v.reason};
    }
    out.payload.assign(set.shares[0].size(), 0);
    for (const Bytes& sh : set.shares) {
        if (sh.size() != out.payload.size()) return {false, {}, "share length mismatch"};
        for (size_t i = 0; i < sh.size(); ++i) out.payload[i] ^= sh[i];
    }
    out.ok = true;
    return out;
}

// ------------------------------------------------------------- statistics --
// Chi-square statistic of byte frequencies against uniform (255 dof).
inline double chi_square_bytes(const Bytes& data) {
    if (data.empty()) throw std::invalid_argument("chi_square_bytes: empty sample");
    std::vector<double> counts(256, 0.0);
    for (uint8_t b : data) counts[b] += 1.0;
    const double expect = static_cast<double>(data.size()) / 256.0;
    double stat = 0.0;
    for (double c : counts) stat += (c - expect) * (c - expect) / expect;
    return stat;
}

// 0.99 quantile of chi-square with 255 degrees of freedom: a sample passes
// the p > 0.01 uniformity smoke test iff its statistic stays below this.
inline constexpr double kChiSquare255Q99 = 310.457;

}  // namespace ramnet::protocol
