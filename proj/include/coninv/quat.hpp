#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coninv/modint.hpp"

namespace coninv {

// x0 + x1 i + x2 j + x3 k over Z_m with i^2 = j^2 = k^2 = -1, ij = -ji = k.
struct QuatInt {
    ModInt x0, x1, x2, x3;

    QuatInt() = default;
    QuatInt(ModInt a, ModInt b, ModInt c, ModInt d) : x0(a), x1(b), x2(c), x3(d) {}
    static QuatInt of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                      std::uint32_t m) {
        return QuatInt(ModInt(a, m), ModInt(b, m), ModInt(c, m), ModInt(d, m));
    }

    std::uint32_t modulus() const { return x0.modulus(); }
    bool is_zero() const { return x0.is_zero() && x1.is_zero() && x2.is_zero() && x3.is_zero(); }
    bool is_one() const { return x0.value() == 1 && x1.is_zero() && x2.is_zero() && x3.is_zero(); }
    bool is_scalar() const { return x1.is_zero() && x2.is_zero() && x3.is_zero(); }

    QuatInt operator+(const QuatInt& o) const {
        return QuatInt(x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3);
    }
    QuatInt operator-(const QuatInt& o) const {
        return QuatInt(x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3);
    }
    QuatInt operator-() const { return QuatInt(-x0, -x1, -x2, -x3); }

    QuatInt operator*(const QuatInt& o) const {
        // Hamilton product.
        return QuatInt(
            x0 * o.x0 - x1 * o.x1 - x2 * o.x2 - x3 * o.x3,
            x0 * o.x1 + x1 * o.x0 + x2 * o.x3 - x3 * o.x2,
            x0 * o.x2 - x1 * o.x3 + x2 * o.x0 + x3 * o.x1,
            x0 * o.x3 + x1 * o.x2 - x2 * o.x1 + x3 * o.x0);
    }

    bool operator==(const QuatInt& o) const {
        return x0 == o.x0 && x1 == o.x1 && x2 == o.x2 && x3 == o.x3;
    }
    bool operator!=(const QuatInt& o) const { return !(*this == o); }

    std::string str() const {
        return x0.str() + "+" + x1.str() + "i+" + x2.str() + "j+" + x3.str() + "k";
    }
};

inline QuatInt quat_conj(const QuatInt& z) { return QuatInt(z.x0, -z.x1, -z.x2, -z.x3); }

// z * conj(z) is always the scalar x0^2 + x1^2 + x2^2 + x3^2.
inline ModInt quat_norm(const QuatInt& z) {
    return z.x0 * z.x0 + z.x1 * z.x1 + z.x2 * z.x2 + z.x3 * z.x3;
}

// All ring elements, lexicographic by (x0, x1, x2, x3).
std::vector<QuatInt> quat_all(const Modulus& m);

// All z with z * conj(z) = 1, lexicographic.
std::vector<QuatInt> quat_norm_one_set(const Modulus& m);

} // namespace coninv
