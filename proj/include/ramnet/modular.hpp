#pragma once
// Modular arithmetic over 64-bit moduli: deterministic Miller-Rabin,
// Legendre symbol by Euler's criterion, Tonelli-Shanks square roots.
#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>

namespace ramnet::numbertheory {

using u64 = uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with these bases.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline u64 inv_mod(u64 a, u64 m) {
    // extended gcd; m need not be prime but gcd(a,m) must be 1
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
    while (newr != 0) {
        int64_t q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (r != 1) throw std::domain_error("inv_mod: not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<int64_t>(m) : t);
}

// Legendre symbol via Euler's criterion. N must be an odd prime; this is
// verified (callers scanning sieved primes pay a negligible cost for it).
inline int legendre(int64_t a, u64 N) {
    if (N == 2 || !is_prime(N)) throw std::invalid_argument("legendre: modulus must be an odd prime");
    u64 r = ((a % static_cast<int64_t>(N)) + static_cast<int64_t>(N)) % N;
    if (r == 0) return 0;
    u64 e = powmod(r, (N - 1) / 2, N);
    return e == 1 ? +1 : -1;
}

// Tonelli-Shanks. Returns min(r, N-r) for determinism; nullopt if a is a
// non-residue. N must be an odd prime.
inline std::optional<u64> sqrt_mod(u64 a, u64 N) {
    a %= N;
    if (a == 0) return 0;
    if (powmod(a, (N - 1) / 2, N) != 1) return std::nullopt;
    u64 r;
    if (N % 4 == 3) {
        r = powmod(a, (N + 1) / 4, N);
    } else {
        u64 q = N - 1;
        int s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        u64 z = 2;
        while (powmod(z, (N - 1) / 2, N) != N - 1) ++z;
        u64 m = s, c = powmod(z, q, N), t = powmod(a, q, N);
        r = powmod(a, (q + 1) / 2, N);
        while (t != 1) {
            u64 t2 = t;
            u64 i = 0;
            while (t2 != 1) { t2 = mulmod(t2, t2, N); ++i; }
            u64 b = powmod(c, u64(1) << (m - i - 1), N);
            m = i;
            c = mulmod(b, b, N);
            t = mulmod(t, c, N);
            r = mulmod(r, b, N);
        }
    }
    return std::min(r, N - r);
}

}  // namespace ramnet::numbertheory
