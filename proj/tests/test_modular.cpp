// Modular arithmetic utilities: primality, inverses, Legendre symbols, and
// Tonelli-Shanks square roots, cross-checked by exhaustion on small moduli.
#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <set>

#include "ramnet/modular.hpp"
#include "ramnet/primes.hpp"

using namespace ramnet::numbertheory;

TEST_CASE("mulmod and powmod near the 64-bit edge") {
    const u64 m = 0xFFFFFFFFFFFFFFC5ULL;  // largest 64-bit prime
    CHECK(mulmod(m - 1, m - 1, m) == 1);
    CHECK(powmod(2, m - 1, m) == 1);  // Fermat
    CHECK(powmod(0, 0, 7) == 1);
    CHECK(powmod(5, 0, 7) == 1);
    CHECK(powmod(3, 20, 1000) == 401);  // 3^20 = 3486784401
}

TEST_CASE("is_prime agrees with a sieve up to 100000") {
    auto ps = primes_up_to(100000);
    std::set<uint64_t> pset(ps.begin(), ps.end());
    for (u64 n = 0; n <= 100000; ++n)
        CHECK(is_prime(n) == (pset.count(n) != 0));
}

TEST_CASE("is_prime on large and adversarial inputs") {
    CHECK(is_prime(0) == false);
    CHECK(is_prime(1) == false);
    CHECK(is_prime(2));
    CHECK(is_prime((1ULL << 61) - 1));           // Mersenne prime
    CHECK_FALSE(is_prime((1ULL << 59) - 1));     // 179951 * ...
    CHECK(is_prime(0xFFFFFFFFFFFFFFC5ULL));
    CHECK_FALSE(is_prime(3215031751ULL));        // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime(341550071728321ULL));   // spsp to 2..17
    CHECK_FALSE(is_prime(614889782588491410ULL));  // product of primes 2..47
}

TEST_CASE("primes_up_to boundaries") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<uint64_t>{2});
    auto ps = primes_up_to(97);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 97);
    CHECK(ps.size() == 25);
    CHECK(primes_up_to(1'000'000).size() == 78498);
}

TEST_CASE("inv_mod is the modular inverse") {
    for (u64 m : {2ULL, 5ULL, 97ULL, 1009ULL})
        for (u64 a = 1; a < m; ++a)
            CHECK(mulmod(inv_mod(a, m), a % m, m) == 1);
    CHECK(inv_mod(1, 2) == 1);
    CHECK_THROWS_AS(inv_mod(0, 7), std::domain_error);
    CHECK_THROWS_AS(inv_mod(6, 9), std::domain_error);  // gcd 3
}

TEST_CASE("legendre symbol by exhaustion") {
    for (u64 N : {3ULL, 5ULL, 13ULL, 29ULL, 101ULL}) {
        std::set<u64> squares;
        for (u64 r = 1; r < N; ++r) squares.insert(r * r % N);
        for (int64_t a = -static_cast<int64_t>(2 * N); a <= static_cast<int64_t>(2 * N); ++a) {
            int64_t red = ((a % static_cast<int64_t>(N)) + static_cast<int64_t>(N)) %
                          static_cast<int64_t>(N);
            int expect = red == 0 ? 0 : (squares.count(static_cast<u64>(red)) ? 1 : -1);
            CHECK(legendre(a, N) == expect);
        }
    }
    CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
}

TEST_CASE("sqrt_mod finds the smaller root or reports none") {
    for (u64 N : {3ULL, 5ULL, 13ULL, 17ULL, 29ULL, 97ULL, 1009ULL}) {
        for (u64 a = 0; a < N; ++a) {
            auto r = sqrt_mod(a, N);
            if (legendre(static_cast<int64_t>(a), N) == -1) {
                CHECK_FALSE(r.has_value());
            } else {
                REQUIRE(r.has_value());
                CHECK(mulmod(*r, *r, N) == a);
                CHECK(*r <= N - *r);  // canonical smaller root
            }
        }
    }
    // sqrt(-1) mod the prime 2^31 - 1 (= 3 mod 4) does not exist.
    CHECK_FALSE(sqrt_mod(2147483646ULL, 2147483647ULL).has_value());
    // A large prime = 1 mod 8 exercises the full Tonelli-Shanks loop, with
    // 2 a guaranteed residue there.
    u64 p = 1'000'001;
    while (!is_prime(p) || p % 8 != 1) ++p;
    auto big = sqrt_mod(2, p);
    REQUIRE(big.has_value());
    CHECK(mulmod(*big, *big, p) == 2);
}
