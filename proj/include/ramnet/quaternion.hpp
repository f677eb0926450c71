#pragma once
// Quaternions a + b i + c j + d k over Z or Z[tau], with i^2 = j^2 = -1 and
// ij = -ji = k (Hamilton table). Half-integral order elements are carried by
// a single denominator flag den in {1,2}: the stored coefficients are the
// numerators of a/den + (b/den) i + ... . Products temporarily reach den = 4
// and are reduced; an irreducible den = 4 has no meaning for the orders this
// library handles and is rejected.
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ramnet/checked.hpp"
#include "ramnet/ztau.hpp"

namespace ramnet::algebra {

// Ring helpers shared by int64_t and ZTau coefficients.
inline bool ring_even(int64_t v) { return v % 2 == 0; }
inline bool ring_even(ZTau v) { return v.x % 2 == 0 && v.y % 2 == 0; }
inline int64_t ring_half(int64_t v) { return v / 2; }
inline ZTau ring_half(ZTau v) { return {v.x / 2, v.y / 2}; }
inline int64_t ring_zero(int64_t) { return 0; }
inline ZTau ring_zero(ZTau) { return ZTau::zero(); }

template <class R>
struct Quat {
    R a{}, b{}, c{}, d{};
    int den{1};  // 1 or 2

    Quat() = default;
    Quat(R a_, R b_, R c_, R d_, int den_ = 1) : a(a_), b(b_), c(c_), d(d_), den(den_) {
        reduce();
    }
    static Quat scalar(R v) { return Quat(v, ring_zero(v), ring_zero(v), ring_zero(v)); }

    void reduce() {
        while (den > 1 && ring_even(a) && ring_even(b) && ring_even(c) && ring_even(d)) {
            a = ring_half(a); b = ring_half(b); c = ring_half(c); d = ring_half(d);
            den /= 2;
        }
        if (den != 1 && den != 2) throw std::domain_error("Quat: denominator not in {1,2}");
    }

    friend Quat operator*(const Quat& p, const Quat& q) {
        Quat r;
        r.a = p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d;
        r.b = p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c;
        r.c = p.a * q.c + p.c * q.a - p.b * q.d + p.d * q.b;
        r.d = p.a * q.d + p.d * q.a + p.b * q.c - p.c * q.b;
        r.den = p.den * q.den;
        r.reduce();
        return r;
    }
    friend Quat operator+(const Quat& p, const Quat& q) {
        if (p.den == q.den) return Quat(p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d, p.den);
        const Quat& h = p.den == 2 ? p : q;   // den 2
        const Quat& w = p.den == 2 ? q : p;   // den 1, scale up
        return Quat(h.a + w.a + w.a, h.b + w.b + w.b, h.c + w.c + w.c, h.d + w.d + w.d, 2);
    }
    friend Quat operator-(const Quat& p) { return Quat(-p.a, -p.b, -p.c, -p.d, p.den); }
    friend Quat operator-(const Quat& p, const Quat& q) { return p + (-q); }
    friend bool operator==(const Quat& p, const Quat& q) = default;

    Quat conj() const { return Quat(a, -b, -c, -d, den); }

    // Reduced norm (a^2+b^2+c^2+d^2)/den^2; exact, throws if not integral.
    R norm() const {
        R s = a * a + b * b + c * c + d * d;
        for (int t = den * den; t > 1; t /= 2) {
            if (!ring_even(s)) throw std::domain_error("Quat: non-integral norm");
            s = ring_half(s);
        }
        return s;
    }
    // Reduced trace 2a/den; exact by construction (den=2 gives a itself).
    R trace() const { return den == 2 ? a : a + a; }

    std::array<R, 4> coords() const { return {a, b, c, d}; }
    // Numerators on the common denominator 2 (used by order membership).
    std::array<R, 4> doubled() const {
        if (den == 2) return {a, b, c, d};
        return {a + a, b + b, c + c, d + d};
    }

    friend auto operator<=>(const Quat& p, const Quat& q) = default;
};

using QuatZ = Quat<int64_t>;
using QuatF = Quat<ZTau>;

inline QuatF quat_i() { return {ZTau::zero(), ZTau::one(), ZTau::zero(), ZTau::zero()}; }
inline QuatF quat_j() { return {ZTau::zero(), ZTau::zero(), ZTau::one(), ZTau::zero()}; }
inline QuatF quat_k() { return {ZTau::zero(), ZTau::zero(), ZTau::zero(), ZTau::one()}; }

}  // namespace ramnet::algebra
