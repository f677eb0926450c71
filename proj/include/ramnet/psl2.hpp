#pragma once
// PSL(2, F_N): element table with canonical representatives, fast index
// lookup, and the reduction maps sending quaternion generators to 2x2
// matrices mod N.
#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "ramnet/modular.hpp"
#include "ramnet/quaternion.hpp"
#include "ramnet/ztau.hpp"

namespace ramnet::cayley {

using algebra::QuatF;
using algebra::QuatZ;
using algebra::ZTau;

struct Mat2 {
    uint32_t a{0}, b{0}, c{0}, d{0};  // row-major, entries in [0, N)
    friend bool operator==(const Mat2&, const Mat2&) = default;
    friend auto operator<=>(const Mat2&, const Mat2&) = default;  // row-major lex
};

inline Mat2 mat_mul(uint32_t N, const Mat2& x, const Mat2& y) {
    auto m = [N](uint32_t u, uint32_t v) { return static_cast<uint64_t>(u) * v % N; };
    return {static_cast<uint32_t>((m(x.a, y.a) + m(x.b, y.c)) % N),
            static_cast<uint32_t>((m(x.a, y.b) + m(x.b, y.d)) % N),
            static_cast<uint32_t>((m(x.c, y.a) + m(x.d, y.c)) % N),
            static_cast<uint32_t>((m(x.c, y.b) + m(x.d, y.d)) % N)};
}

inline uint32_t mat_det(uint32_t N, const Mat2& x) {
    uint64_t ad = static_cast<uint64_t>(x.a) * x.d % N;
    uint64_t bc = static_cast<uint64_t>(x.b) * x.c % N;
    return static_cast<uint32_t>((ad + N - bc) % N);
}

inline Mat2 mat_scale(uint32_t N, const Mat2& x, uint32_t s) {
    auto m = [N, s](uint32_t u) { return static_cast<uint32_t>(static_cast<uint64_t>(u) * s % N); };
    return {m(x.a), m(x.b), m(x.c), m(x.d)};
}

// Canonical representative of {m, -m}: the first nonzero entry in row-major
// order lies in [1, (N-1)/2]. Input must be nonzero mod N.
inline Mat2 canon_psl2(uint32_t N, const Mat2& m) {
    for (uint32_t e : {m.a, m.b, m.c, m.d}) {
        if (e == 0) continue;
        return e <= (N - 1) / 2 ? m : mat_scale(N, m, N - 1);
    }
    throw std::invalid_argument("canon_psl2: zero matrix");
}

// Scale a matrix with square determinant to determinant 1. Returns nullopt if
// the determinant is zero or a non-residue mod N.
inline std::optional<Mat2> normalize_det(uint32_t N, const Mat2& m) {
    uint32_t det = mat_det(N, m);
    if (det == 0) return std::nullopt;
    auto s = numbertheory::sqrt_mod(det, N);
    if (!s) return std::nullopt;
    return mat_scale(N, m, static_cast<uint32_t>(numbertheory::inv_mod(*s, N)));
}

// The full element table for PSL(2, F_N), N an odd prime.
class GroupContext {
  public:
    explicit GroupContext(uint32_t N) : N_(N) {
        if (N < 3 || !numbertheory::is_prime(N))
            throw std::invalid_argument("GroupContext: N must be an odd prime");
        const uint64_t order = static_cast<uint64_t>(N) * (N - 1) * (N + 1) / 2;
        elements_.reserve(order);
        index_.reserve(order * 2);
        // det = 1 solutions: a != 0 forces d = (1+bc)/a; a = 0 forces c = -1/b.
        for (uint32_t a = 1; a < N; ++a) {
            uint64_t ai = numbertheory::inv_mod(a, N);
            for (uint32_t b = 0; b < N; ++b)
                for (uint32_t c = 0; c < N; ++c) {
                    uint64_t d = (1 + static_cast<uint64_t>(b) * c % N) % N * ai % N;
                    insert({a, b, c, static_cast<uint32_t>(d)});
                }
        }
        for (uint32_t b = 1; b < N; ++b) {
            auto c = static_cast<uint32_t>(N - numbertheory::inv_mod(b, N));
            for (uint32_t d = 0; d < N; ++d) insert({0, b, c, d});
        }
        if (elements_.size() != order)
            throw std::logic_error("GroupContext: order mismatch after enumeration");
        // Index = rank in lexicographic order of the canonical matrices, so
        // vertex numbering (and every export) is reproducible by definition.
        std::sort(elements_.begin(), elements_.end());
        index_.clear();
        for (uint32_t i = 0; i < elements_.size(); ++i) index_.emplace(key(elements_[i]), i);
    }

    uint32_t modulus() const { return N_; }
    uint32_t size() const { return static_cast<uint32_t>(elements_.size()); }
    const Mat2& element(uint32_t idx) const { return elements_[idx]; }
    const std::vector<Mat2>& elements() const { return elements_; }

    // Index of a det-1 matrix (canonicalized internally).
    uint32_t locate(const Mat2& m) const {
        if (mat_det(N_, m) != 1)
            throw std::invalid_argument("GroupContext::locate: determinant must be 1");
        auto it = index_.find(key(canon_psl2(N_, m)));
        if (it == index_.end()) throw std::logic_error("GroupContext::locate: element missing");
        return it->second;
    }
    uint32_t identity() const { return locate({1, 0, 0, 1}); }

  private:
    uint64_t key(const Mat2& m) const {
        return ((static_cast<uint64_t>(m.a) * N_ + m.b) * N_ + m.c) * N_ + m.d;
    }
    void insert(const Mat2& m) {
        Mat2 cm = canon_psl2(N_, m);
        auto [it, fresh] = index_.try_emplace(key(cm), static_cast<uint32_t>(elements_.size()));
        if (fresh) elements_.push_back(cm);
    }

    uint32_t N_;
    std::vector<Mat2> elements_;
    std::unordered_map<uint64_t, uint32_t> index_;
};

// --------------------------------------------------------------- reduction --
// Both embeddings send a + bi + cj + dk to [[a+bw, -c-dw], [c-dw, a-bw]]
// where w is a square root of -1 mod N; determinant = reduced norm mod N.

class RationalEmbedder {
  public:
    explicit RationalEmbedder(uint32_t N) : N_(N) {
        auto w = numbertheory::sqrt_mod(N - 1, N);
        if (!w) throw std::invalid_argument("RationalEmbedder: -1 must be a square mod N");
        w_ = static_cast<uint32_t>(*w);
    }
    uint32_t root_m1() const { return w_; }

    Mat2 embed(const QuatZ& q) const {
        if (q.den != 1) throw std::invalid_argument("RationalEmbedder: integral input required");
        auto r = [this](int64_t v) {
            int64_t n = v % static_cast<int64_t>(N_);
            return static_cast<uint32_t>(n < 0 ? n + N_ : n);
        };
        return assemble(N_, w_, r(q.a), r(q.b), r(q.c), r(q.d));
    }

    static Mat2 assemble(uint32_t N, uint32_t w, uint32_t a, uint32_t b, uint32_t c, uint32_t d) {
        auto mw = [N, w](uint32_t v) {
            return static_cast<uint32_t>(static_cast<uint64_t>(v) * w % N);
        };
        auto neg = [N](uint32_t v) { return v == 0 ? 0 : N - v; };
        return {static_cast<uint32_t>((a + mw(b)) % N),
                static_cast<uint32_t>((neg(c) + neg(mw(d))) % N),
                static_cast<uint32_t>((c + neg(mw(d))) % N),
                static_cast<uint32_t>((a + neg(mw(b))) % N)};
    }

  private:
    uint32_t N_, w_;
};

// Reduction O_F -> F_N through a chosen square root s5 of 5 mod N:
// tau = (1 + s5)/2.
class HilbertEmbedder {
  public:
    HilbertEmbedder(uint32_t N, uint32_t s5) : N_(N), s5_(s5) {
        if (static_cast<uint64_t>(s5) * s5 % N != 5 % N)
            throw std::invalid_argument("HilbertEmbedder: s5^2 != 5 mod N");
        auto w = numbertheory::sqrt_mod(N - 1, N);
        if (!w) throw std::invalid_argument("HilbertEmbedder: -1 must be a square mod N");
        w_ = static_cast<uint32_t>(*w);
        inv2_ = static_cast<uint32_t>(numbertheory::inv_mod(2, N));
        tau_ = static_cast<uint32_t>((1 + static_cast<uint64_t>(s5)) % N * inv2_ % N);
    }
    uint32_t root_m1() const { return w_; }
    uint32_t tau_mod() const { return tau_; }

    uint32_t reduce_scalar(const ZTau& z) const {
        auto r = [this](int64_t v) {
            int64_t n = v % static_cast<int64_t>(N_);
            return static_cast<uint64_t>(n < 0 ? n + N_ : n);
        };
        return static_cast<uint32_t>((r(z.x) + r(z.y) * tau_) % N_);
    }

    Mat2 embed(const QuatF& q) const {
        auto dc = q.doubled();  // numerators over denominator 2
        uint32_t a = half(reduce_scalar(dc[0])), b = half(reduce_scalar(dc[1]));
        uint32_t c = half(reduce_scalar(dc[2])), d = half(reduce_scalar(dc[3]));
        return RationalEmbedder::assemble(N_, w_, a, b, c, d);
    }

  private:
    uint32_t half(uint32_t v) const {
        return static_cast<uint32_t>(static_cast<uint64_t>(v) * inv2_ % N_);
    }
    uint32_t N_, s5_, w_, inv2_, tau_;
};

// Reduce a generator to its PSL(2, F_N) index: embed, rescale to det 1
// (requires the norm to be a square mod N), canonicalize.
template <class Embedder, class Q>
uint32_t reduce_generator(const GroupContext& ctx, const Embedder& emb, const Q& q) {
    auto m = normalize_det(ctx.modulus(), emb.embed(q));
    if (!m)
        throw std::domain_error("reduce_generator: norm is not a nonzero square mod N");
    return ctx.locate(*m);
}

}  // namespace ramnet::cayley
