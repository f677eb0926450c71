#pragma once
// Overflow-checked 64-bit arithmetic. Generator enumeration and norm
// computations must never wrap silently: a wrapped coefficient would corrupt
// a generator set without any visible symptom downstream.
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramnet {

struct overflow_error : std::runtime_error {
    explicit overflow_error(const char* op)
        : std::runtime_error(std::string("integer overflow in ") + op) {}
};

inline int64_t cadd(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow_error("add");
    return r;
}

inline int64_t csub(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("sub");
    return r;
}

inline int64_t cmul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("mul");
    return r;
}

inline int64_t cneg(int64_t a) { return csub(0, a); }

// Integer square root: largest s with s*s <= n (n >= 0).
inline int64_t isqrt64(int64_t n) {
    if (n < 0) throw std::domain_error("isqrt64 of negative");
    auto s = static_cast<int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
    while (s > 0 && s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

}  // namespace ramnet
