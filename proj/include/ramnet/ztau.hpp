#pragma once
// Exact arithmetic in O_F = Z[tau], the ring of integers of F = Q(sqrt 5),
// with tau = (1+sqrt5)/2 satisfying tau^2 = tau + 1.
//
// Elements are stored in the 1,tau basis (x + y*tau with integer x,y), which
// keeps every quantity this library needs integral: sqrt5 = 2*tau - 1.
// Sign tests at the two real embeddings are done exactly (integer comparisons
// against 5*y^2), never through floating point.
#include <compare>
#include <cstdint>
#include <string>

#include "ramnet/checked.hpp"

namespace ramnet::algebra {

struct ZTau {
    int64_t x{0};  // coefficient of 1
    int64_t y{0};  // coefficient of tau

    constexpr ZTau() = default;
    constexpr ZTau(int64_t x_, int64_t y_) : x(x_), y(y_) {}
    static constexpr ZTau zero() { return {0, 0}; }
    static constexpr ZTau one() { return {1, 0}; }
    static constexpr ZTau tau() { return {0, 1}; }
    static constexpr ZTau tau_inv() { return {-1, 1}; }  // tau^-1 = tau - 1
    static constexpr ZTau sqrt5() { return {-1, 2}; }    // sqrt5 = 2*tau - 1

    friend ZTau operator+(ZTau a, ZTau b) { return {cadd(a.x, b.x), cadd(a.y, b.y)}; }
    friend ZTau operator-(ZTau a, ZTau b) { return {csub(a.x, b.x), csub(a.y, b.y)}; }
    friend ZTau operator-(ZTau a) { return {cneg(a.x), cneg(a.y)}; }
    // (x1 + y1 t)(x2 + y2 t) with t^2 = t + 1.
    friend ZTau operator*(ZTau a, ZTau b) {
        int64_t yy = cmul(a.y, b.y);
        return {cadd(cmul(a.x, b.x), yy),
                cadd(cadd(cmul(a.x, b.y), cmul(a.y, b.x)), yy)};
    }
    ZTau& operator+=(ZTau o) { return *this = *this + o; }
    ZTau& operator-=(ZTau o) { return *this = *this - o; }
    ZTau& operator*=(ZTau o) { return *this = *this * o; }
    friend bool operator==(ZTau a, ZTau b) = default;
    friend auto operator<=>(ZTau a, ZTau b) = default;  // lexicographic (x, y)

    // Galois conjugate: tau -> 1 - tau.
    ZTau conj() const { return {cadd(x, y), cneg(y)}; }
    // Field norm x^2 + xy - y^2 (= self * conj).
    int64_t norm() const { return csub(cadd(cmul(x, x), cmul(x, y)), cmul(y, y)); }
    // Field trace 2x + y.
    int64_t trace() const { return cadd(cadd(x, x), y); }

    bool is_zero() const { return x == 0 && y == 0; }
    bool divisible_by(int64_t m) const { return x % m == 0 && y % m == 0; }
    ZTau divide_by(int64_t m) const {
        if (!divisible_by(m)) throw std::domain_error("ZTau: inexact division");
        return {x / m, y / m};
    }

    // Exact sign of the element at embedding sigma1 (tau -> (1+sqrt5)/2) or
    // sigma2 (tau -> (1-sqrt5)/2). sigma_k(x + y tau) = (2x + y +- y sqrt5)/2,
    // so the sign is the sign of A + B sqrt5 with A = 2x+y, B = +-y, decided
    // by comparing A^2 with 5 B^2.
    int sign_at(int embedding) const {
        int64_t A = cadd(cadd(x, x), y);
        int64_t B = (embedding == 1) ? y : cneg(y);
        if (A == 0 && B == 0) return 0;
        if (A >= 0 && B >= 0) return +1;
        if (A <= 0 && B <= 0) return -1;
        int64_t a2 = cmul(A, A), b52 = cmul(5, cmul(B, B));
        if (A > 0) return a2 > b52 ? +1 : (a2 < b52 ? -1 : 0);
        return a2 < b52 ? +1 : (a2 > b52 ? -1 : 0);
    }
    bool totally_positive() const { return sign_at(1) > 0 && sign_at(2) > 0; }

    // Real embeddings for bounding boxes (not for sign decisions).
    double embed1() const { return x + y * 1.6180339887498948482; }
    double embed2() const { return x - y * 0.6180339887498948482; }

    std::string str() const {
        return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
    }
};

// tau^k for any integer k (tau^-1 = tau - 1).
inline ZTau tau_pow(int k) {
    ZTau t = ZTau::one();
    ZTau step = k >= 0 ? ZTau::tau() : ZTau::tau_inv();
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) t *= step;
    return t;
}

}  // namespace ramnet::algebra
