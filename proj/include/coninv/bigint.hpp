#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace coninv {

// Exact nonnegative counts; table values reach 27 decimal digits.
using CountExpr = boost::multiprecision::cpp_int;

inline CountExpr pow_count(std::uint64_t base, std::uint64_t exp) {
    CountExpr r = 1, b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

inline CountExpr factorial(std::uint64_t n) {
    CountExpr r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

// s (s-1) ... (s-j+1)
inline CountExpr falling_factorial(std::uint64_t s, std::uint64_t j) {
    CountExpr r = 1;
    for (std::uint64_t i = 0; i < j; ++i) r *= CountExpr(s - i);
    return r;
}

inline std::string dec(const CountExpr& v) { return v.str(); }

} // namespace coninv
