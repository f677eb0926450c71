#pragma once
// Generator sets for the colored Cayley graphs, and the square-property
// factorization table.
//
// Q case (one color per prime p = 1 mod 4): the p+1 integral quaternions of
// norm p with a odd > 0 and b,c,d even.
//
// Q(sqrt5) case (two colors from a split prime p = 1,9 mod 20, p = pi*pibar):
// the p+1 elements of M_{0,F} = O_F[i,j] in normal form of norm pi (resp.
// pibar). Normal form means: x = 1 (mod 2M) in the maximal order M, Tr(x)
// totally positive, and tau^-3 < Tr(x) <= tau^3 at the first embedding — the
// window is a fundamental domain for scaling by the unit tau^6, which changes
// the norm by tau^12, and the congruence constrains the norm class only
// modulo tau^6, so the enumeration sweeps norms pi * tau^{6k} for the
// finitely many k the window leaves open.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramnet/certificates.hpp"
#include "ramnet/checked.hpp"
#include "ramnet/modular.hpp"
#include "ramnet/order.hpp"
#include "ramnet/pell.hpp"
#include "ramnet/quaternion.hpp"
#include "ramnet/ztau.hpp"

namespace ramnet::generators {

using algebra::MaximalOrder;
using algebra::Quat;
using algebra::QuatF;
using algebra::QuatZ;
using algebra::ZTau;

template <class R>
struct GeneratorSet {
    std::string color;
    R norm_value{};
    std::vector<Quat<R>> gens;
    size_t count() const { return gens.size(); }
};

// ---------------------------------------------------------------- Q case --
inline GeneratorSet<int64_t> lps_generators(int64_t p) {
    if (p < 5 || p % 4 != 1 || !numbertheory::is_prime(static_cast<numbertheory::u64>(p)))
        throw std::invalid_argument("lps_generators: p must be a prime = 1 mod 4");
    GeneratorSet<int64_t> set;
    set.color = "p" + std::to_string(p);
    set.norm_value = p;
    int64_t m = isqrt64(p);
    for (int64_t a = 1; a <= m; a += 2)
        for (int64_t b = -m; b <= m; ++b) {
            if (b % 2 != 0) continue;
            for (int64_t c = -m; c <= m; ++c) {
                if (c % 2 != 0) continue;
                int64_t rem = p - a * a - b * b - c * c;
                if (rem < 0) continue;
                int64_t d = isqrt64(rem);
                if (d * d != rem || d % 2 != 0) continue;
                set.gens.push_back({a, b, c, d});
                if (d != 0) set.gens.push_back({a, b, c, -d});
            }
        }
    std::sort(set.gens.begin(), set.gens.end());
    if (set.gens.size() != static_cast<size_t>(p + 1))
        throw std::runtime_error("lps_generators: count != p+1 (enumeration bug)");
    return set;
}

// ---------------------------------------------------------- Q(sqrt5) case --
// Trace window bounds.
inline ZTau window_lo() { return ZTau(-3, 2); }  // tau^-3
inline ZTau window_hi() { return ZTau(1, 2); }   // tau^3

inline bool trace_in_window(const ZTau& t) {
    if (!t.totally_positive()) return false;
    return (t - window_lo()).sign_at(1) > 0 && (window_hi() - t).sign_at(1) >= 0;
}

inline bool is_normal_form(const MaximalOrder& M, const QuatF& x) {
    return x.den == 1 && trace_in_window(x.trace()) && M.congruent_one_mod_2M(x);
}

// All w in O_F with w^2 totally <= nu (coefficient box of a definite form).
inline std::vector<ZTau> coefficient_box(const ZTau& nu) {
    if (!nu.totally_positive() && !nu.is_zero())
        throw std::invalid_argument("coefficient_box: bound must be totally positive");
    double b1 = std::sqrt(std::max(0.0, nu.embed1()));
    double b2 = std::sqrt(std::max(0.0, nu.embed2()));
    std::vector<ZTau> box;
    auto vmax = static_cast<int64_t>((b1 + b2) / 2.2360679) + 2;
    for (int64_t v = -vmax; v <= vmax; ++v) {
        auto ulo = static_cast<int64_t>(std::floor(-b1 - v * 1.6180340)) - 1;
        auto uhi = static_cast<int64_t>(std::ceil(b1 - v * 1.6180340)) + 1;
        for (int64_t u = ulo; u <= uhi; ++u) {
            ZTau w(u, v);
            ZTau slack = nu - w * w;
            if (slack.sign_at(1) >= 0 && slack.sign_at(2) >= 0) box.push_back(w);
        }
    }
    return box;
}

// Solve d*d = rem in O_F via the embeddings, verifying exactly.
inline std::vector<ZTau> sqrt_in_of(const ZTau& rem) {
    std::vector<ZTau> out;
    if (rem.sign_at(1) < 0 || rem.sign_at(2) < 0) return out;
    if (rem.is_zero()) return {ZTau::zero()};
    double q1 = std::sqrt(std::max(0.0, rem.embed1()));
    double q2 = std::sqrt(std::max(0.0, rem.embed2()));
    for (double e1 : {q1, -q1})
        for (double e2 : {q2, -q2}) {
            double v = (e1 - e2) / 2.2360679774997896;
            double u = e1 - v * 1.6180339887498949;
            auto vu = static_cast<int64_t>(std::llround(u));
            auto vv = static_cast<int64_t>(std::llround(v));
            for (int64_t du = -1; du <= 1; ++du)
                for (int64_t dv = -1; dv <= 1; ++dv) {
                    ZTau d(vu + du, vv + dv);
                    if (d * d == rem && std::find(out.begin(), out.end(), d) == out.end())
                        out.push_back(d);
                }
        }
    return out;
}

// All normal-form elements of M_{0,F} of norm nu0 * tau^{6k}, k in Z. The
// congruence x = 1 (mod 2M) pins the norm class only modulo tau^6 (tau has
// order 3 in (O_F/2)^x), so consecutive exponents must all be swept. The
// sweep is finite: a normal-form x has totally positive trace 2a with
// sigma1(2a) in (tau^-3, tau^3], and a totally positive a in O_F has
// Nm(a) >= 1, hence sigma2(a) >= 2 tau^-3; with sigma1(a^2) <= sigma1(nu)
// and sigma2(a^2) <= sigma2(nu) this forces
//   tau^-6 / 4 < sigma1(nu) <= Nm(nu) * tau^6 / 4,
// an exactly testable window that admits finitely many k.
inline bool norm_exponent_admissible(const ZTau& nu) {
    const ZTau t6 = algebra::tau_pow(6);
    ZTau four_nu = nu + nu + nu + nu;
    ZTau upper = ZTau(nu.norm(), 0) * t6 - four_nu;   // Nm(nu)*tau^6 - 4 nu
    ZTau lower = four_nu * t6 - ZTau::one();          // 4 nu tau^6 - 1
    return upper.sign_at(1) >= 0 && lower.sign_at(1) > 0;
}

inline std::vector<QuatF> enumerate_normal_form(const MaximalOrder& M, const ZTau& nu0) {
    std::vector<QuatF> found;
    if (nu0.is_zero() || nu0.norm() <= 0)
        throw std::invalid_argument("enumerate_normal_form: norm must be totally positive");
    // Overcover the admissible exponent range in floating point, then filter
    // each candidate exponent exactly.
    const double log_t6 = 6.0 * std::log(1.6180339887498948482);
    double s1 = std::max(nu0.embed1(), 1e-300);
    int kmin = static_cast<int>(std::floor(std::log(1.0 / (4.0 * s1)) / log_t6 - 1.0)) - 1;
    int kmax = static_cast<int>(
                   std::ceil(std::log(double(nu0.norm()) * 17.95 / (4.0 * s1)) / log_t6 + 1.0)) +
               1;
    for (int k = kmin; k <= kmax; ++k) {
        ZTau nu = nu0 * algebra::tau_pow(6 * k);
        if (!nu.totally_positive() || !norm_exponent_admissible(nu)) continue;
        auto box = coefficient_box(nu);
        std::vector<ZTau> a_candidates;
        for (const ZTau& a : box)
            if (trace_in_window(a + a)) a_candidates.push_back(a);
        for (const ZTau& a : a_candidates)
            for (const ZTau& b : box) {
                ZTau rem_ab = nu - a * a - b * b;
                if (rem_ab.sign_at(1) < 0 || rem_ab.sign_at(2) < 0) continue;
                for (const ZTau& c : box) {
                    ZTau rem = rem_ab - c * c;
                    for (const ZTau& d : sqrt_in_of(rem)) {
                        QuatF x(a, b, c, d);
                        if (M.congruent_one_mod_2M(x)) found.push_back(x);
                    }
                }
            }
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

struct HilbertPair {
    numbertheory::PellRep rep;
    ZTau pi, pi_bar;
    GeneratorSet<ZTau> red, blue;  // norm pi / norm pi_bar
};

inline HilbertPair hilbert_generators(int64_t p, const MaximalOrder& M = MaximalOrder()) {
    if ((p % 20 != 1 && p % 20 != 9) || !numbertheory::is_prime(static_cast<numbertheory::u64>(p)))
        throw std::invalid_argument("hilbert_generators: p must be a prime = 1,9 mod 20");
    // The p+1 count additionally needs tau to be a square mod p (equivalently
    // pi = 1 mod 4 O_F).  Otherwise some classes of norm-pi elements consist
    // entirely of trace-zero quaternions, which no unit scaling can bring into
    // the normal-form trace window, and the enumeration comes up short.
    if (!numbertheory::tau_square_criterion(static_cast<numbertheory::u64>(p)))
        throw std::invalid_argument(
            "hilbert_generators: generators exist only when tau is a square mod p");
    HilbertPair out;
    out.rep = numbertheory::pell_rep(p, 4);
    out.pi = numbertheory::pi_from_pell(out.rep);
    out.pi_bar = out.pi.conj();
    out.red = {"pi", out.pi, enumerate_normal_form(M, out.pi)};
    out.blue = {"pi_bar", out.pi_bar, enumerate_normal_form(M, out.pi_bar)};
    if (out.red.count() != static_cast<size_t>(p + 1) ||
        out.blue.count() != static_cast<size_t>(p + 1))
        throw std::runtime_error("hilbert_generators: count != p+1 (search-region bug)");
    return out;
}

// Galois conjugation of Q(sqrt5) applied to every coefficient (sends norm pi
// to norm pi-bar; does NOT preserve the maximal order M in general).
inline QuatF galois_conj(const QuatF& q) {
    return QuatF(q.a.conj(), q.b.conj(), q.c.conj(), q.d.conj(), q.den);
}

// Normal-form normalization: y * u for a unit u of M_{0,F} (quaternion-group
// part {+-1,+-i,+-j,+-k} times tau powers) landing in normal form. Used by
// the pairing property (Galois conjugation followed by normalization).
inline std::optional<QuatF> normalize_to_normal_form(const MaximalOrder& M, const QuatF& y) {
    const ZTau O = ZTau::zero(), I = ZTau::one();
    const std::array<QuatF, 4> q8 = {QuatF(I, O, O, O), QuatF(O, I, O, O),
                                     QuatF(O, O, I, O), QuatF(O, O, O, I)};
    for (const QuatF& g : q8)
        for (int sign = +1; sign >= -1; sign -= 2)
            for (int m = -6; m <= 6; ++m) {
                QuatF u = QuatF::scalar(algebra::tau_pow(m)) * g;
                if (sign < 0) u = -u;
                QuatF cand = y * u;
                if (is_normal_form(M, cand)) return cand;
            }
    return std::nullopt;
}

// ------------------------------------------------------------ square table --
struct UnitDesc {
    int tau_exp{0};
    int sign{+1};
};

template <class R>
struct SquareTableEntry {
    uint32_t i2{0}, j2{0};
    UnitDesc u;
};

template <class R>
struct SquareTable {
    GeneratorSet<R> red, blue;
    std::vector<SquareTableEntry<R>> entries;  // index i * blue.count() + j
    const SquareTableEntry<R>& at(size_t i, size_t j) const {
        return entries[i * blue.count() + j];
    }
};

inline int64_t unit_value(int64_t, const UnitDesc& u) {
    if (u.tau_exp != 0) throw std::domain_error("unit_value: no tau over Z");
    return u.sign;
}
inline ZTau unit_value(ZTau, const UnitDesc& u) {
    ZTau t = algebra::tau_pow(u.tau_exp);
    return u.sign > 0 ? t : -t;
}

// Norm exponents of a generator set: each element's reduced norm equals
// norm_value * tau^{6k}; returns {k_min, k_max}. Over Z every norm equals
// norm_value exactly, so the spread is zero.
inline std::pair<int, int> norm_exponent_range(const GeneratorSet<int64_t>& s) {
    for (const auto& g : s.gens)
        if (g.norm() != s.norm_value)
            throw std::runtime_error("norm_exponent_range: unexpected norm over Z");
    return {0, 0};
}
inline std::pair<int, int> norm_exponent_range(const GeneratorSet<ZTau>& s) {
    const ZTau t6 = algebra::tau_pow(6), t6i = algebra::tau_pow(-6);
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& g : s.gens) {
        // nm / norm_value as an exact element: nm * conj(nv) / Nm(nv).
        ZTau q = (g.norm() * s.norm_value.conj()).divide_by(s.norm_value.norm());
        int k = 0;
        for (int it = 0; !(q == ZTau::one()); ++it) {
            if (it > 128)
                throw std::runtime_error("norm_exponent_range: norm not in tau^6 orbit");
            bool big = (q - ZTau::one()).sign_at(1) > 0;  // sigma1(q) > 1
            q = q * (big ? t6i : t6);
            k += big ? 1 : -1;
        }
        if (first || k < lo) lo = k;
        if (first || k > hi) hi = k;
        first = false;
    }
    return {lo, hi};
}

// Units a completion may differ by. Over Z only +-1; over Z[tau] the scalars
// +-tau^{3m} (scaling by tau^3 preserves the congruence class). If red spans
// norm exponents of width s1 and blue of width s2, the connecting unit's
// exponent is 3*(k1 + k2 - k1' - k2'), hence bounded by 3*(s1 + s2).
template <class R>
std::vector<UnitDesc> unit_family(R, int width);
template <>
inline std::vector<UnitDesc> unit_family<int64_t>(int64_t, int) {
    return {{0, +1}, {0, -1}};
}
template <>
inline std::vector<UnitDesc> unit_family<ZTau>(ZTau, int width) {
    std::vector<UnitDesc> fam;
    for (int e = -3 * width; e <= 3 * width; e += 3)
        for (int s : {+1, -1}) fam.push_back({e, s});
    return fam;
}

template <class R>
std::array<int64_t, 9> quat_key(const Quat<R>& q);
template <>
inline std::array<int64_t, 9> quat_key<int64_t>(const QuatZ& q) {
    return {q.a, 0, q.b, 0, q.c, 0, q.d, 0, q.den};
}
template <>
inline std::array<int64_t, 9> quat_key<ZTau>(const QuatF& q) {
    return {q.a.x, q.a.y, q.b.x, q.b.y, q.c.x, q.c.y, q.d.x, q.d.y, q.den};
}

// For every (i,j): red[i]*blue[j] = blue[j2]*red[i2]*u with u in the declared
// unit family — total, unique, and (i,j) -> (i2,j2) bijective. Exact
// quaternion identities; failures throw.
template <class R>
SquareTable<R> square_table(const GeneratorSet<R>& red, const GeneratorSet<R>& blue) {
    SquareTable<R> table{red, blue, {}};
    const size_t r1 = red.count(), r2 = blue.count();
    auto [rlo, rhi] = norm_exponent_range(red);
    auto [blo, bhi] = norm_exponent_range(blue);
    auto fam = unit_family<R>(R{}, (rhi - rlo) + (bhi - blo));

    // Index all base products blue[j2]*red[i2] once; a pair's completion is
    // then found by dividing its product by each candidate unit.
    std::map<std::array<int64_t, 9>, std::vector<std::pair<uint32_t, uint32_t>>> lookup;
    for (uint32_t j2 = 0; j2 < r2; ++j2)
        for (uint32_t i2 = 0; i2 < r1; ++i2)
            lookup[quat_key<R>(blue.gens[j2] * red.gens[i2])].push_back({i2, j2});

    table.entries.reserve(r1 * r2);
    std::vector<char> hit(r1 * r2, 0);
    for (uint32_t i = 0; i < r1; ++i)
        for (uint32_t j = 0; j < r2; ++j) {
            Quat<R> P = red.gens[i] * blue.gens[j];
            int matches = 0;
            SquareTableEntry<R> entry{};
            for (const UnitDesc& u : fam) {
                UnitDesc u_inv{-u.tau_exp, u.sign};
                auto it = lookup.find(quat_key<R>(P * Quat<R>::scalar(unit_value(R{}, u_inv))));
                if (it == lookup.end()) continue;
                for (auto [i2, j2] : it->second) {
                    ++matches;
                    entry = {i2, j2, u};
                }
            }
            if (matches == 0)
                throw std::runtime_error("square_table: no completion for a pair");
            if (matches > 1)
                throw std::runtime_error("square_table: multiple completions for a pair");
            char& seen = hit[entry.i2 * r2 + entry.j2];
            if (seen) throw std::runtime_error("square_table: index map not injective");
            seen = 1;
            table.entries.push_back(entry);
        }
    return table;
}

// Independent re-verification of the defining identity (no reuse of the
// table's intermediate products).
template <class R>
bool verify_square_table(const SquareTable<R>& t) {
    for (size_t i = 0; i < t.red.count(); ++i)
        for (size_t j = 0; j < t.blue.count(); ++j) {
            const auto& e = t.at(i, j);
            Quat<R> lhs = t.red.gens[i] * t.blue.gens[j];
            Quat<R> rhs = t.blue.gens[e.j2] * t.red.gens[e.i2] *
                          Quat<R>::scalar(unit_value(R{}, e.u));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

}  // namespace ramnet::generators
