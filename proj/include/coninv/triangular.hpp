#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coninv/gauss.hpp"
#include "coninv/mat2.hpp"
#include "coninv/quat.hpp"

namespace coninv {

// Conjugation-ring glue used by the triangular-matrix machinery.
// components() flattens an element to residues in canonical order; that
// flattening doubles as the serialization and hashing key.
template <typename R>
struct RingTraits;

template <>
struct RingTraits<GaussInt> {
    static constexpr const char* name = "gauss";
    static constexpr int components = 2;
    static GaussInt zero(std::uint32_t m) { return GaussInt::of(0, 0, m); }
    static GaussInt one(std::uint32_t m) { return GaussInt::of(1, 0, m); }
    static GaussInt conj(const GaussInt& z) { return gauss_conj(z); }
    static void append(const GaussInt& z, std::vector<std::uint32_t>& out) {
        out.push_back(z.re.value());
        out.push_back(z.im.value());
    }
    static GaussInt from(const std::uint32_t* c, std::uint32_t m) {
        return GaussInt::of(c[0], c[1], m);
    }
};

template <>
struct RingTraits<QuatInt> {
    static constexpr const char* name = "quat";
    static constexpr int components = 4;
    static QuatInt zero(std::uint32_t m) { return QuatInt::of(0, 0, 0, 0, m); }
    static QuatInt one(std::uint32_t m) { return QuatInt::of(1, 0, 0, 0, m); }
    static QuatInt conj(const QuatInt& z) { return quat_conj(z); }
    static void append(const QuatInt& z, std::vector<std::uint32_t>& out) {
        out.push_back(z.x0.value());
        out.push_back(z.x1.value());
        out.push_back(z.x2.value());
        out.push_back(z.x3.value());
    }
    static QuatInt from(const std::uint32_t* c, std::uint32_t m) {
        return QuatInt::of(c[0], c[1], c[2], c[3], m);
    }
};

template <>
struct RingTraits<Mat2> {
    static constexpr const char* name = "block";
    static constexpr int components = 4;
    static Mat2 zero(std::uint32_t m) { return Mat2::zero(m); }
    static Mat2 one(std::uint32_t m) { return Mat2::identity(m); }
    static Mat2 conj(const Mat2& z) { return tilde(z); }
    static void append(const Mat2& z, std::vector<std::uint32_t>& out) {
        out.push_back(z.m1.value());
        out.push_back(z.m2.value());
        out.push_back(z.m3.value());
        out.push_back(z.m4.value());
    }
    static Mat2 from(const std::uint32_t* c, std::uint32_t m) {
        return Mat2::of(c[0], c[1], c[2], c[3], m);
    }
};

// n x n upper-triangular matrix over a conjugation ring; below-diagonal
// entries are implicitly zero.  Value type, no exposed mutation.
template <typename R>
class UpperTri {
public:
    using Traits = RingTraits<R>;

    UpperTri(int n, std::uint32_t m)
        : n_(n), m_(m), e_(std::size_t(n) * (n + 1) / 2, Traits::zero(m)) {
        if (n < 1) throw std::invalid_argument("UpperTri: dimension must be >= 1");
    }

    UpperTri(int n, std::uint32_t m, std::vector<R> upper_entries)
        : n_(n), m_(m), e_(std::move(upper_entries)) {
        if (n < 1) throw std::invalid_argument("UpperTri: dimension must be >= 1");
        if (e_.size() != std::size_t(n) * (n + 1) / 2)
            throw std::invalid_argument("UpperTri: entry count mismatch");
    }

    static UpperTri identity(int n, std::uint32_t m) {
        UpperTri a(n, m);
        for (int r = 1; r <= n; ++r) a.e_[a.index(r, r)] = Traits::one(m);
        return a;
    }

    int dim() const { return n_; }
    std::uint32_t modulus() const { return m_; }

    // 1-based, r <= s.
    const R& at(int r, int s) const { return e_[index(r, s)]; }

    friend UpperTri mul(const UpperTri& a, const UpperTri& b) {
        if (a.n_ != b.n_ || a.m_ != b.m_)
            throw std::invalid_argument("UpperTri::mul: dimension or modulus mismatch");
        UpperTri c(a.n_, a.m_);
        for (int r = 1; r <= a.n_; ++r)
            for (int s = r; s <= a.n_; ++s) {
                R acc = Traits::zero(a.m_);
                for (int t = r; t <= s; ++t) acc = acc + a.at(r, t) * b.at(t, s);
                c.e_[c.index(r, s)] = acc;
            }
        return c;
    }

    friend UpperTri conj_entrywise(const UpperTri& a) {
        UpperTri c = a;
        for (auto& v : c.e_) v = Traits::conj(v);
        return c;
    }

    friend bool is_coninvolution(const UpperTri& a) {
        return mul(a, conj_entrywise(a)) == UpperTri::identity(a.n_, a.m_);
    }

    bool operator==(const UpperTri& o) const {
        return n_ == o.n_ && m_ == o.m_ && e_ == o.e_;
    }
    bool operator!=(const UpperTri& o) const { return !(*this == o); }

    // Row-major component flattening of the upper triangle.
    std::vector<std::uint32_t> key() const {
        std::vector<std::uint32_t> k;
        k.reserve(e_.size() * Traits::components);
        for (const auto& v : e_) Traits::append(v, k);
        return k;
    }

    std::string str() const {
        std::string out;
        for (int r = 1; r <= n_; ++r) {
            out += "[";
            for (int s = 1; s <= n_; ++s) {
                if (s > 1) out += ", ";
                out += (s >= r) ? at(r, s).str() : Traits::zero(m_).str();
            }
            out += "]";
            if (r < n_) out += "\n";
        }
        return out;
    }

private:
    std::size_t index(int r, int s) const {
        assert(1 <= r && r <= s && s <= n_);
        //   row r (1-based) starts after rows 1..r-1, each row q holding n-q+1 entries
        std::size_t before = std::size_t(r - 1) * n_ - std::size_t(r - 1) * (r - 2) / 2;
        return before + std::size_t(s - r);
    }

    int n_;
    std::uint32_t m_;
    std::vector<R> e_;
};

} // namespace coninv
