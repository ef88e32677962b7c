#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coninv/modint.hpp"
#include "coninv/quat.hpp"

namespace coninv {

// 2x2 matrix [[m1, m2], [m3, m4]] over Z_m.
struct Mat2 {
    ModInt m1, m2, m3, m4;

    Mat2() = default;
    Mat2(ModInt a, ModInt b, ModInt c, ModInt d) : m1(a), m2(b), m3(c), m4(d) {}
    static Mat2 of(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                   std::uint32_t m) {
        return Mat2(ModInt(a, m), ModInt(b, m), ModInt(c, m), ModInt(d, m));
    }
    static Mat2 identity(std::uint32_t m) { return of(1, 0, 0, 1, m); }
    static Mat2 zero(std::uint32_t m) { return of(0, 0, 0, 0, m); }

    std::uint32_t modulus() const { return m1.modulus(); }
    bool is_zero() const { return m1.is_zero() && m2.is_zero() && m3.is_zero() && m4.is_zero(); }
    bool is_one() const {
        return m1.value() == 1 && m2.is_zero() && m3.is_zero() && m4.value() == 1;
    }

    Mat2 operator+(const Mat2& o) const { return Mat2(m1 + o.m1, m2 + o.m2, m3 + o.m3, m4 + o.m4); }
    Mat2 operator-(const Mat2& o) const { return Mat2(m1 - o.m1, m2 - o.m2, m3 - o.m3, m4 - o.m4); }
    Mat2 operator-() const { return Mat2(-m1, -m2, -m3, -m4); }
    Mat2 operator*(const Mat2& o) const {
        return Mat2(m1 * o.m1 + m2 * o.m3, m1 * o.m2 + m2 * o.m4,
                    m3 * o.m1 + m4 * o.m3, m3 * o.m2 + m4 * o.m4);
    }
    Mat2 operator*(ModInt s) const { return Mat2(m1 * s, m2 * s, m3 * s, m4 * s); }

    bool operator==(const Mat2& o) const {
        return m1 == o.m1 && m2 == o.m2 && m3 == o.m3 && m4 == o.m4;
    }
    bool operator!=(const Mat2& o) const { return !(*this == o); }

    ModInt det() const { return m1 * m4 - m2 * m3; }

    std::string str() const {
        return "[[" + m1.str() + "," + m2.str() + "],[" + m3.str() + "," + m4.str() + "]]";
    }
};

// Adjugate [[m4, -m2], [-m3, m1]]; M * tilde(M) = det(M) * I.
inline Mat2 tilde(const Mat2& M) { return Mat2(M.m4, -M.m2, -M.m3, M.m1); }

inline bool mat2_lex_less(const Mat2& a, const Mat2& b) {
    if (a.m1.value() != b.m1.value()) return a.m1.value() < b.m1.value();
    if (a.m2.value() != b.m2.value()) return a.m2.value() < b.m2.value();
    if (a.m3.value() != b.m3.value()) return a.m3.value() < b.m3.value();
    return a.m4.value() < b.m4.value();
}

// Pair (a, b) with a^2 + b^2 = -1 mod p; exists for every odd prime p.
struct PhiBasis {
    Modulus p;
    ModInt a, b;
};

// Lexicographically smallest (a, b) with a^2 + b^2 = -1; deterministic.
PhiBasis find_ab(const Modulus& p);

// Multiplicative bijection Z_p[i,j,k] -> M_2(Z_p):
//   1 -> I,  i -> [[0,1],[-1,0]],  j -> [[a,b],[b,-a]],  k -> [[b,-a],[-a,-b]].
Mat2 phi(const QuatInt& z, const PhiBasis& basis);

// Inverse of phi, via the 4x4 linear system over Z_p given by the basis
// matrices.  Throws if the basis is invalid (a^2 + b^2 != -1).
QuatInt phi_inv(const Mat2& M, const PhiBasis& basis);

// All 2x2 matrices over Z_p, lexicographic.
std::vector<Mat2> mat2_all(const Modulus& m);

// All matrices with det = 1 (these are exactly the diagonal blocks admissible
// in a block coninvolution), lexicographic.
std::vector<Mat2> sl2_set(const Modulus& p);

// |SL_2(Z_p)| = (p^2 - 1) p.
std::uint64_t sl2_order(const Modulus& p);

} // namespace coninv
