#pragma once
// Independent reference searches used to cross-check the library's generator
// enumerations. These deliberately avoid the pruned search logic in
// ramnet/generators.hpp: plain nested sweeps, direct definition checks.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ramnet/order.hpp"
#include "ramnet/quaternion.hpp"
#include "ramnet/ztau.hpp"

namespace oracles {

using ramnet::algebra::MaximalOrder;
using ramnet::algebra::QuatF;
using ramnet::algebra::QuatZ;
using ramnet::algebra::ZTau;

// All integral quaternions of norm p with a odd > 0 and b, c, d even, by a
// four-deep sweep with no square-root shortcuts.
inline std::vector<QuatZ> four_squares_reference(int64_t p) {
    std::vector<QuatZ> out;
    int64_t m = 0;
    while ((m + 1) * (m + 1) <= p) ++m;
    for (int64_t a = 1; a <= m; a += 2)
        for (int64_t b = -m; b <= m; b += 2)
            for (int64_t c = -m; c <= m; c += 2)
                for (int64_t d = -m; d <= m; d += 2)
                    if (a * a + b * b + c * c + d * d == p) out.push_back({a, b, c, d});
    std::sort(out.begin(), out.end());
    return out;
}

// tau^k by repeated multiplication (k may be negative).
inline ZTau tau_to(int k) {
    ZTau t = ZTau::one();
    ZTau s = k >= 0 ? ZTau::tau() : ZTau::tau_inv();
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) t = t * s;
    return t;
}

// Normal form spelled out from the definition: integral, x = 1 (mod 2M),
// totally positive trace lying in (tau^-3, tau^3] at the first embedding.
inline bool normal_form_reference(const MaximalOrder& M, const QuatF& x) {
    if (x.den != 1) return false;
    ZTau t = x.trace();
    if (!t.totally_positive()) return false;
    if (!((t - tau_to(-3)).sign_at(1) > 0)) return false;
    if (!((tau_to(3) - t).sign_at(1) >= 0)) return false;
    return M.in_2M(x - QuatF::scalar(ZTau::one()));
}

// Every normal-form element of norm nu0 * tau^{6k} for k in [kmin, kmax],
// found by sweeping full coefficient boxes (no trace pre-selection, no
// solved-for last coordinate).
inline std::vector<QuatF> normal_form_reference_search(const MaximalOrder& M, const ZTau& nu0,
                                                       int kmin, int kmax) {
    std::vector<QuatF> out;
    for (int k = kmin; k <= kmax; ++k) {
        ZTau nu = nu0 * tau_to(6 * k);
        if (!nu.totally_positive()) continue;
        // Coefficients w must satisfy w^2 totally <= nu; bound the (x, y)
        // rectangle in floating point and keep the exact filter.
        double b1 = std::sqrt(nu.embed1()), b2 = std::sqrt(nu.embed2());
        auto ymax = static_cast<int64_t>((b1 + b2) / 2.236) + 2;
        std::vector<ZTau> box;
        for (int64_t y = -ymax; y <= ymax; ++y) {
            auto xlo = static_cast<int64_t>(std::floor(-b1 - y * 1.618)) - 2;
            auto xhi = static_cast<int64_t>(std::ceil(b1 - y * 1.618)) + 2;
            for (int64_t x = xlo; x <= xhi; ++x) {
                ZTau w{x, y};
                ZTau slack = nu - w * w;
                if (slack.sign_at(1) >= 0 && slack.sign_at(2) >= 0) box.push_back(w);
            }
        }
        for (const ZTau& a : box)
            for (const ZTau& b : box)
                for (const ZTau& c : box)
                    for (const ZTau& d : box) {
                        if (!(a * a + b * b + c * c + d * d == nu)) continue;
                        QuatF x{a, b, c, d};
                        if (normal_form_reference(M, x)) out.push_back(x);
                    }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace oracles
