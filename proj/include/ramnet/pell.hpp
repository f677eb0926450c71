#pragma once
// Representations a^2 - 20 b^2 = scale * target (scale in {1,4}) by ascending
// search over b, with the normalizations the selection criteria depend on.
#include <cstdint>
#include <stdexcept>
#include <string>

#include "ramnet/checked.hpp"
#include "ramnet/ztau.hpp"

namespace ramnet::numbertheory {

struct PellRep {
    int64_t a{0};
    int64_t b{0};
    int64_t target{0};
    int scale{1};

    bool valid() const {
        return a > 0 && cmul(a, a) - 20 * cmul(b, b) == cmul(scale, target) &&
               (scale == 1 ? (a % 2 != 0) : ((a - b) % 2 == 0));
    }
};

// Minimal-|b| representation, b >= 0. Throws if none exists below the search
// bound (which means the precondition target = 1,9 mod 20 was violated).
inline PellRep pell_rep(int64_t target, int scale) {
    if (scale != 1 && scale != 4) throw std::invalid_argument("pell_rep: scale must be 1 or 4");
    if (target <= 0) throw std::invalid_argument("pell_rep: target must be positive");
    constexpr int64_t kMaxIter = 1000000;
    int64_t rhs0 = cmul(scale, target);
    for (int64_t b = 0; b <= kMaxIter; ++b) {
        int64_t a2 = cadd(rhs0, cmul(20, cmul(b, b)));
        int64_t a = isqrt64(a2);
        if (a * a != a2) continue;
        PellRep rep{a, b, target, scale};
        if (!rep.valid())
            throw std::logic_error("pell_rep: representation fails normalization for " +
                                   std::to_string(target));
        return rep;
    }
    throw std::domain_error("pell_rep: no representation found for " + std::to_string(target));
}

// The split prime pi = (a + 2b sqrt5)/2 from the scale-4 representation of 4p,
// expressed in the 1,tau basis: pi = (a/2 - b) + 2b tau.
inline algebra::ZTau pi_from_pell(const PellRep& rep) {
    if (rep.scale != 4) throw std::invalid_argument("pi_from_pell: need a scale-4 representation");
    if (rep.a % 2 != 0 || rep.b % 2 != 0)
        throw std::domain_error("pi_from_pell: representation not halvable");
    return {rep.a / 2 - rep.b, 2 * rep.b};
}

}  // namespace ramnet::numbertheory
