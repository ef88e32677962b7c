#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coninv/modint.hpp"

namespace coninv {

// a + bi with a, b residues mod m and i^2 = -1.
struct GaussInt {
    ModInt re, im;

    GaussInt() = default;
    GaussInt(ModInt r, ModInt i) : re(r), im(i) { assert(r.modulus() == i.modulus()); }
    static GaussInt of(std::int64_t a, std::int64_t b, std::uint32_t m) {
        return GaussInt(ModInt(a, m), ModInt(b, m));
    }

    std::uint32_t modulus() const { return re.modulus(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_one() const { return re.value() == 1 && im.is_zero(); }

    GaussInt operator+(const GaussInt& o) const { return GaussInt(re + o.re, im + o.im); }
    GaussInt operator-(const GaussInt& o) const { return GaussInt(re - o.re, im - o.im); }
    GaussInt operator-() const { return GaussInt(-re, -im); }
    GaussInt operator*(const GaussInt& o) const {
        return GaussInt(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussInt operator*(ModInt s) const { return GaussInt(re * s, im * s); }

    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussInt& o) const { return !(*this == o); }

    std::string str() const { return re.str() + "+" + im.str() + "i"; }
};

inline GaussInt gauss_conj(const GaussInt& z) { return GaussInt(z.re, -z.im); }
inline ModInt gauss_norm(const GaussInt& z) { return z.re * z.re + z.im * z.im; }

// z^-1 = conj(z) / |z|^2; requires |z|^2 invertible mod m.
inline GaussInt gauss_inverse(const GaussInt& z) {
    ModInt n = gauss_norm(z).inverse();
    return gauss_conj(z) * n;
}

// (re, im) lexicographic; the canonical enumeration order everywhere.
inline bool gauss_lex_less(const GaussInt& a, const GaussInt& b) {
    if (a.re.value() != b.re.value()) return a.re.value() < b.re.value();
    return a.im.value() < b.im.value();
}

// All z with |z|^2 = 1, lexicographic by (re, im).
std::vector<GaussInt> norm_one_set(const Modulus& m);
std::uint64_t norm_one_count(const Modulus& m);

// All ring elements, lexicographic.
std::vector<GaussInt> gauss_all(const Modulus& m);

// Count of invertible elements of Z_m[i] (norm coprime to m), by exhaustive
// enumeration; guarded to m <= 10^4.
std::uint64_t unit_group_order(const Modulus& m);

} // namespace coninv
