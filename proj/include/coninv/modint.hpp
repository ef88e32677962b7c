#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coninv {

// Runtime modulus m >= 2 with primality flags computed once at construction.
struct Modulus {
    std::uint32_t m = 0;
    bool is_prime = false;
    bool is_odd_prime = false;

    static Modulus of(std::uint32_t m) {
        if (m < 2) throw std::invalid_argument("modulus must be >= 2");
        bool prime = true;
        for (std::uint64_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) { prime = false; break; }
        }
        return Modulus{m, prime, prime && (m % 2 == 1)};
    }

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.m == b.m; }
};

// Residue in [0, m).  Every value carries its modulus; mixed-modulus
// arithmetic is a programming error and trips the assert below.
class ModInt {
public:
    ModInt() = default;
    ModInt(std::int64_t v, std::uint32_t m) : m_(m) {
        assert(m >= 2);
        std::int64_t r = v % static_cast<std::int64_t>(m);
        if (r < 0) r += m;
        v_ = static_cast<std::uint32_t>(r);
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return m_; }
    bool is_zero() const { return v_ == 0; }

    ModInt operator+(ModInt o) const { same(o); return ModInt(std::int64_t(v_) + o.v_, m_); }
    ModInt operator-(ModInt o) const { same(o); return ModInt(std::int64_t(v_) - o.v_, m_); }
    ModInt operator*(ModInt o) const { same(o); return ModInt(std::int64_t(v_) * o.v_, m_); }
    ModInt operator-() const { return ModInt(-std::int64_t(v_), m_); }

    ModInt& operator+=(ModInt o) { return *this = *this + o; }
    ModInt& operator-=(ModInt o) { return *this = *this - o; }
    ModInt& operator*=(ModInt o) { return *this = *this * o; }

    bool operator==(ModInt o) const { same(o); return v_ == o.v_; }
    bool operator!=(ModInt o) const { return !(*this == o); }

    // Extended Euclid; defined iff gcd(v, m) = 1 (works for composite m too).
    ModInt inverse() const {
        std::int64_t a = v_, b = m_, x0 = 1, x1 = 0;
        while (b != 0) {
            std::int64_t q = a / b;
            std::int64_t t = a - q * b; a = b; b = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (a != 1) throw std::domain_error("ModInt::inverse: value not coprime to modulus");
        return ModInt(x0, m_);
    }

    ModInt pow(std::uint64_t e) const {
        ModInt r(1, m_), base = *this;
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    std::string str() const { return std::to_string(v_); }

private:
    void same(ModInt o) const { assert(m_ == o.m_ && m_ != 0); (void)o; }

    std::uint32_t v_ = 0;
    std::uint32_t m_ = 0;
};

inline ModInt half(ModInt x) { return x * ModInt(2, x.modulus()).inverse(); }

} // namespace coninv
