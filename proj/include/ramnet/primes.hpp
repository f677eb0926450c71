#pragma once
// Sieve of Eratosthenes for the scan ranges (limits up to ~10^7).
#include <cstdint>
#include <vector>

namespace ramnet::numbertheory {

inline std::vector<uint64_t> primes_up_to(uint64_t limit) {
    std::vector<uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> comp(limit + 1, false);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!comp[i])
            for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!comp[i]) out.push_back(i);
    return out;
}

}  // namespace ramnet::numbertheory
