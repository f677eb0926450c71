#pragma once
// Prime-selection criteria for the modulus N of the vertex group.
//
// For F = Q(sqrt5): N = 1,9 (mod 20) makes -1 and 5 squares mod N and N split
// in O_F. Writing N = a^2 - 20 b^2 (a > 0 odd), tau is a square mod N exactly
// when a + 2b = 1 (mod 4); for a split prime p with pi = (A + 2B sqrt5)/2,
// the two-sided condition asks that both (A +- 2B sqrt5)/2 be squares mod N.
// Certificates pin the chosen square roots so every downstream reduction uses
// the same ones.
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ramnet/modular.hpp"
#include "ramnet/pell.hpp"
#include "ramnet/primes.hpp"

namespace ramnet::numbertheory {

struct PrimeCertificate {
    u64 N{0};
    u64 sqrt_m1{0};      // square root of -1 mod N (smaller of the pair)
    u64 sqrt_5{0};       // square root of 5 mod N (smaller of the pair)
    PellRep pell;        // N = a^2 - 20 b^2, the part-1 witness
    bool tau_is_square{false};
    bool pi_split_ok{false};  // both (A +- 2B sqrt5)/2 squares mod N (part 2)
    u64 pi_residue{0};        // (A + 2B sqrt_5) * inv(2) mod N
    u64 pi_bar_residue{0};    // (A - 2B sqrt_5) * inv(2) mod N
};

inline bool in_class_1_9_mod_20(u64 N) { return N % 20 == 1 || N % 20 == 9; }

// tau as a residue mod N for a chosen root s of 5: (1 + s)/2.
inline u64 tau_residue(u64 N, u64 sqrt5) { return mulmod((1 + sqrt5) % N, inv_mod(2, N), N); }

// Part-1 criterion: a + 2b = 1 (mod 4) for N = a^2 - 20 b^2.
// (The sign of b does not matter: a+2b and a-2b differ by a multiple of 4.)
inline bool tau_square_criterion(u64 N) {
    if (!in_class_1_9_mod_20(N)) throw std::invalid_argument("tau_square_criterion: N must be 1,9 mod 20");
    PellRep rep = pell_rep(static_cast<int64_t>(N), 1);
    return (rep.a + 2 * rep.b) % 4 == 1;
}

// Full certificate for one candidate N relative to a split prime p (p may be
// 0 to skip the part-2 test).
inline std::optional<PrimeCertificate> certify(u64 N, u64 p) {
    if (!is_prime(N) || !in_class_1_9_mod_20(N) || N == p) return std::nullopt;
    PrimeCertificate cert;
    cert.N = N;
    cert.pell = pell_rep(static_cast<int64_t>(N), 1);
    cert.tau_is_square = (cert.pell.a + 2 * cert.pell.b) % 4 == 1;
    if (!cert.tau_is_square) return std::nullopt;
    cert.sqrt_m1 = sqrt_mod(N - 1, N).value();  // exists: N = 1 (mod 4)
    cert.sqrt_5 = sqrt_mod(5, N).value();       // exists: N = +-1 (mod 5)
    if (p != 0) {
        PellRep pp = pell_rep(static_cast<int64_t>(p), 4);
        u64 inv2 = inv_mod(2, N);
        u64 bs = mulmod(2 * static_cast<u64>(pp.b) % N, cert.sqrt_5, N);
        u64 A = static_cast<u64>(pp.a) % N;
        cert.pi_residue = mulmod((A + bs) % N, inv2, N);
        cert.pi_bar_residue = mulmod((A + N - bs % N) % N, inv2, N);
        cert.pi_split_ok = legendre(static_cast<int64_t>(cert.pi_residue), N) == 1 &&
                           legendre(static_cast<int64_t>(cert.pi_bar_residue), N) == 1;
        if (!cert.pi_split_ok) return std::nullopt;
    }
    return cert;
}

// All valid moduli N <= limit for the split prime p (Q(sqrt5) case).
inline std::vector<PrimeCertificate> scan_valid_N(u64 p, u64 limit) {
    if (!is_prime(p) || !in_class_1_9_mod_20(p))
        throw std::invalid_argument("scan_valid_N: p must be a prime = 1,9 mod 20");
    std::vector<PrimeCertificate> out;
    for (u64 N : primes_up_to(limit)) {
        if (!in_class_1_9_mod_20(N)) continue;
        if (auto cert = certify(N, p)) out.push_back(*cert);
    }
    return out;
}

struct DensityReport {
    u64 limit{0};
    u64 prime_count{0};
    u64 class_count{0};   // primes = 1,9 mod 20
    u64 part1_count{0};   // tau a square
    u64 part2_count{0};   // part 1 and both pi residues square (for fixed p)
    double class_fraction() const { return double(class_count) / double(prime_count); }
    double part1_fraction() const { return double(part1_count) / double(prime_count); }
    double part2_fraction() const { return double(part2_count) / double(prime_count); }
};

inline DensityReport density_report(u64 limit, u64 p) {
    if (limit < 10000) throw std::invalid_argument("density_report: limit too small to be meaningful");
    PellRep pp = pell_rep(static_cast<int64_t>(p), 4);
    DensityReport rep;
    rep.limit = limit;
    for (u64 N : primes_up_to(limit)) {
        ++rep.prime_count;
        if (!in_class_1_9_mod_20(N)) continue;
        ++rep.class_count;
        // N = p self-excludes from part 2 below: one of the pi residues is 0.
        PellRep r = pell_rep(static_cast<int64_t>(N), 1);
        if ((r.a + 2 * r.b) % 4 != 1) continue;
        ++rep.part1_count;
        u64 s5 = sqrt_mod(5, N).value();
        u64 inv2 = inv_mod(2, N);
        u64 bs = mulmod(2 * static_cast<u64>(pp.b) % N, s5, N);
        u64 A = static_cast<u64>(pp.a) % N;
        u64 pi1 = mulmod((A + bs) % N, inv2, N);
        u64 pi2 = mulmod((A + N - bs % N) % N, inv2, N);
        if (powmod(pi1, (N - 1) / 2, N) == 1 && powmod(pi2, (N - 1) / 2, N) == 1)
            ++rep.part2_count;
    }
    return rep;
}

// Q case: valid moduli for the rational construction are primes N = 1 mod 4
// with every generator norm (p, and q if present) a square mod N.
inline std::vector<u64> scan_valid_N_rational(const std::vector<u64>& ps, u64 limit) {
    std::vector<u64> out;
    for (u64 N : primes_up_to(limit)) {
        if (N % 4 != 1) continue;
        bool ok = true;
        for (u64 p : ps)
            if (N == p || legendre(static_cast<int64_t>(p), N) != 1) { ok = false; break; }
        if (ok) out.push_back(N);
    }
    return out;
}

}  // namespace ramnet::numbertheory
