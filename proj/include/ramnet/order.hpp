#pragma once
// The maximal quaternion order M over O_F (F = Q(sqrt5)) with half-integral
// basis
//   e1 = (1 + tau^-1 i + tau j)/2        e2 = (tau^-1 i + j + tau k)/2
//   e3 = (tau i + tau^-1 j + k)/2        e4 = (i + tau j + tau^-1 k)/2
// plus the suborder O_F + 2M. Membership and congruence tests reduce to an
// exact linear solve against the basis matrix B (columns = 2*e_i in 1,i,j,k
// coordinates): det B = 4*tau^-1 is a unit times 4, so B^-1 = adj(B)*tau/4
// with integral adjugate, and "q in M" is a divisibility check.
#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ramnet/quaternion.hpp"
#include "ramnet/ztau.hpp"

namespace ramnet::algebra {

class MaximalOrder {
public:
    MaximalOrder() {
        const ZTau O = ZTau::zero(), I = ZTau::one(), T = ZTau::tau(), Ti = ZTau::tau_inv();
        basis_ = {QuatF(I, Ti, T, O, 2), QuatF(O, Ti, I, T, 2),
                  QuatF(O, T, Ti, I, 2), QuatF(O, I, T, Ti, 2)};
        // B[row=coordinate][col=basis index] over the doubled coordinates.
        std::array<std::array<ZTau, 4>, 4> B{};
        for (int j = 0; j < 4; ++j) {
            auto cj = basis_[j].doubled();
            for (int i = 0; i < 4; ++i) B[i][j] = cj[i];
        }
        ZTau det = det4(B);
        if (det != ZTau(-4, 4))  // 4*tau^-1
            throw std::logic_error("MaximalOrder: unexpected basis determinant");
        // adj[j][i] = (-1)^{i+j} * minor(i,j): adjugate = transposed cofactors.
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                ZTau m = det3(B, i, j);
                adj_[j][i] = ((i + j) % 2 == 0) ? m : -m;
            }
    }

    const std::array<QuatF, 4>& basis() const { return basis_; }

    // Coordinates of q in the e-basis if q lies in M, else nullopt.
    // lambda = adj(B) * (doubled coords) * tau / 4.
    std::optional<std::array<ZTau, 4>> order_coords(const QuatF& q) const {
        auto t = q.doubled();
        std::array<ZTau, 4> lam;
        for (int j = 0; j < 4; ++j) {
            ZTau s = ZTau::zero();
            for (int i = 0; i < 4; ++i) s += adj_[j][i] * t[i];
            s = s * ZTau::tau();
            if (!s.divisible_by(4)) return std::nullopt;
            lam[j] = s.divide_by(4);
        }
        return lam;
    }

    bool contains(const QuatF& q) const { return order_coords(q).has_value(); }

    bool in_2M(const QuatF& q) const {
        auto lam = order_coords(q);
        if (!lam) return false;
        for (const auto& w : *lam)
            if (!ring_even(w)) return false;
        return true;
    }

    // q = 1 (mod 2M), the congruence that cuts out generator normal forms.
    bool congruent_one_mod_2M(const QuatF& q) const {
        return in_2M(q - QuatF::scalar(ZTau::one()));
    }

    // O_F + 2M on integral (den = 1) elements: b + tau c + tau^-1 d in 2 O_F.
    static bool in_OF_plus_2M(const QuatF& q) {
        if (q.den != 1) return false;
        ZTau s = q.b + ZTau::tau() * q.c + ZTau::tau_inv() * q.d;
        return ring_even(s);
    }

    // All norm-1 units of M, by exhaustive search over the coefficient box
    // forced by total definiteness: Nm(q) = 1 means each coefficient of q has
    // both embeddings bounded by 1, i.e. the doubled coordinates by 2.
    std::vector<QuatF> unit_group() const {
        std::vector<ZTau> box;
        for (int64_t v = -2; v <= 2; ++v)
            for (int64_t u = -6; u <= 6; ++u) {
                ZTau w(u, v);
                ZTau slack = ZTau(4, 0) - w * w;  // 4 - w^2 >= 0 at both embeddings
                if (slack.sign_at(1) >= 0 && slack.sign_at(2) >= 0) box.push_back(w);
            }
        std::vector<QuatF> units;
        for (ZTau a : box)
            for (ZTau b : box)
                for (ZTau c : box)
                    for (ZTau d : box) {
                        QuatF q(a, b, c, d, 2);
                        if (!contains(q)) continue;
                        if (q.norm() == ZTau::one()) units.push_back(q);
                    }
        std::sort(units.begin(), units.end());
        return units;
    }

    // ---- residue structure M/2M (a 16-element F4-algebra = Mat2(F4)) ----
    // F4 = O_F/2 is encoded as x + 2y from the representative x + y*tau,
    // x,y in {0,1}; its nonzero elements are {1, tau, tau^2 = 1 + tau}.
    using F4Coords = std::array<uint8_t, 4>;

    std::optional<F4Coords> mod2_coords(const QuatF& q) const {
        auto lam = order_coords(q);
        if (!lam) return std::nullopt;
        F4Coords r;
        for (int j = 0; j < 4; ++j)
            r[j] = static_cast<uint8_t>(((*lam)[j].x & 1) | (((*lam)[j].y & 1) << 1));
        return r;
    }

    static uint8_t f4_mul(uint8_t a, uint8_t b) {
        // (x1 + y1 t)(x2 + y2 t) mod 2 with t^2 = t + 1.
        unsigned x1 = a & 1, y1 = a >> 1, x2 = b & 1, y2 = b >> 1;
        unsigned yy = y1 & y2;
        return static_cast<uint8_t>(((x1 & x2) ^ yy) | ((((x1 & y2) ^ (y1 & x2)) ^ yy) << 1));
    }

    // Canonical representative of the projective class of nonzero coords:
    // minimum over multiplication by the three scalars of F4^x.
    static F4Coords projective_class(F4Coords v) {
        F4Coords best = v;
        for (uint8_t s : {2, 3}) {  // tau and 1+tau (s=1 is v itself)
            F4Coords w;
            for (int i = 0; i < 4; ++i) w[i] = f4_mul(s, v[i]);
            if (w < best) best = w;
        }
        return best;
    }

private:
    static ZTau det2(ZTau a, ZTau b, ZTau c, ZTau d) { return a * d - b * c; }
    static ZTau det3(const std::array<std::array<ZTau, 4>, 4>& B, int skip_i, int skip_j) {
        std::array<std::array<ZTau, 3>, 3> m;
        int r = 0;
        for (int i = 0; i < 4; ++i) {
            if (i == skip_i) continue;
            int cnum = 0;
            for (int j = 0; j < 4; ++j) {
                if (j == skip_j) continue;
                m[r][cnum++] = B[i][j];
            }
            ++r;
        }
        return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
               m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
               m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
    }
    static ZTau det4(const std::array<std::array<ZTau, 4>, 4>& B) {
        ZTau s = ZTau::zero();
        for (int j = 0; j < 4; ++j) {
            ZTau term = B[0][j] * det3(B, 0, j);
            s = (j % 2 == 0) ? s + term : s - term;
        }
        return s;
    }

    std::array<QuatF, 4> basis_;
    std::array<std::array<ZTau, 4>, 4> adj_;
};

}  // namespace ramnet::algebra
