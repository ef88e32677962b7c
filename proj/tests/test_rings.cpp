#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <numeric>
#include <random>
#include <set>

#include "coninv/gauss.hpp"
#include "coninv/mat2.hpp"
#include "coninv/modint.hpp"
#include "coninv/quat.hpp"

using namespace coninv;

namespace {

GaussInt random_gauss(std::mt19937_64& g, std::uint32_t m) {
    return GaussInt::of(std::int64_t(g() % m), std::int64_t(g() % m), m);
}

QuatInt random_quat(std::mt19937_64& g, std::uint32_t m) {
    return QuatInt::of(std::int64_t(g() % m), std::int64_t(g() % m), std::int64_t(g() % m),
                       std::int64_t(g() % m), m);
}

Mat2 random_mat2(std::mt19937_64& g, std::uint32_t m) {
    return Mat2::of(std::int64_t(g() % m), std::int64_t(g() % m), std::int64_t(g() % m),
                    std::int64_t(g() % m), m);
}

} // namespace

TEST_CASE("modulus flags") {
    CHECK(Modulus::of(2).is_prime);
    CHECK_FALSE(Modulus::of(2).is_odd_prime);
    CHECK(Modulus::of(3).is_odd_prime);
    CHECK_FALSE(Modulus::of(4).is_prime);
    CHECK_FALSE(Modulus::of(9).is_prime);
    CHECK(Modulus::of(29).is_odd_prime);
    CHECK_THROWS_AS(Modulus::of(1), std::invalid_argument);
}

TEST_CASE("modint arithmetic and inversion") {
    ModInt a(5, 7), b(4, 7);
    CHECK((a + b).value() == 2);
    CHECK((a - b).value() == 1);
    CHECK((a * b).value() == 6);
    CHECK((-a).value() == 2);
    CHECK(a.pow(3).value() == 6); // 125 mod 7

    // Extended Euclid works for composite moduli too.
    CHECK(ModInt(3, 10).inverse().value() == 7);
    CHECK_THROWS_AS(ModInt(2, 10).inverse(), std::domain_error);

    for (std::uint32_t m : {3u, 5u, 7u, 11u, 13u})
        for (std::uint32_t v = 1; v < m; ++v)
            CHECK((ModInt(v, m) * ModInt(v, m).inverse()).value() == 1);
}

TEST_CASE("gaussian conjugation and norm") {
    CHECK(gauss_conj(GaussInt::of(1, 2, 3)) == GaussInt::of(1, 1, 3));
    CHECK(gauss_conj(GaussInt::of(3, 0, 5)) == GaussInt::of(3, 0, 5));
    CHECK(gauss_conj(GaussInt::of(0, 1, 7)) == GaussInt::of(0, 6, 7));

    CHECK(gauss_norm(GaussInt::of(0, 1, 3)).value() == 1);
    CHECK(gauss_norm(GaussInt::of(2, 1, 5)).value() == 0);
    GaussInt z = GaussInt::of(2, 3, 7);
    CHECK(gauss_norm(z).value() == 6);
    CHECK(z * gauss_conj(z) == GaussInt(gauss_norm(z), ModInt(0, 7)));

    std::mt19937_64 g(1);
    for (std::uint32_t m : {3u, 5u, 7u, 11u}) {
        for (int i = 0; i < 2500; ++i) {
            GaussInt a = random_gauss(g, m), b = random_gauss(g, m);
            CHECK(gauss_conj(gauss_conj(a)) == a);
            CHECK(gauss_conj(a * b) == gauss_conj(a) * gauss_conj(b));
            CHECK(gauss_norm(a * b) == gauss_norm(a) * gauss_norm(b));
        }
    }
}

TEST_CASE("gaussian inverse") {
    for (std::uint32_t m : {3u, 5u, 7u}) {
        for (const GaussInt& z : gauss_all(Modulus::of(m))) {
            if (std::gcd<std::uint64_t>(gauss_norm(z).value(), m) != 1) continue;
            CHECK((z * gauss_inverse(z)).is_one());
        }
    }
}

TEST_CASE("norm-one set") {
    auto u3 = norm_one_set(Modulus::of(3));
    REQUIRE(u3.size() == 4);
    // lexicographic by (re, im): i, 2i, 1, 2
    CHECK(u3[0] == GaussInt::of(0, 1, 3));
    CHECK(u3[1] == GaussInt::of(0, 2, 3));
    CHECK(u3[2] == GaussInt::of(1, 0, 3));
    CHECK(u3[3] == GaussInt::of(2, 0, 3));

    CHECK(norm_one_set(Modulus::of(5)).size() == 4);

    auto u2 = norm_one_set(Modulus::of(2));
    REQUIRE(u2.size() == 2);
    CHECK(u2[0] == GaussInt::of(0, 1, 2));
    CHECK(u2[1] == GaussInt::of(1, 0, 2));

    // p - 1 when p = 1 mod 4, p + 1 when p = 3 mod 4; enumeration is the
    // ground truth, the closed form is the derived convenience.
    for (std::uint32_t p = 3; p <= 100; ++p) {
        Modulus m = Modulus::of(p);
        if (!m.is_odd_prime) continue;
        std::uint64_t expected = (p % 4 == 1) ? p - 1 : p + 1;
        CHECK(norm_one_count(m) == expected);
    }
}

TEST_CASE("unit group order") {
    CHECK(unit_group_order(Modulus::of(3)) == 8);
    CHECK(unit_group_order(Modulus::of(5)) == 16);
    CHECK(unit_group_order(Modulus::of(9)) == 72);
    CHECK(unit_group_order(Modulus::of(2)) == 2);
    CHECK_THROWS_AS(unit_group_order(Modulus::of(20014)), std::invalid_argument);
}

TEST_CASE("quaternion multiplication table") {
    std::uint32_t m = 11;
    QuatInt one = QuatInt::of(1, 0, 0, 0, m);
    QuatInt i = QuatInt::of(0, 1, 0, 0, m);
    QuatInt j = QuatInt::of(0, 0, 1, 0, m);
    QuatInt k = QuatInt::of(0, 0, 0, 1, m);
    CHECK(i * i == -one);
    CHECK(j * j == -one);
    CHECK(k * k == -one);
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(j * k == i);
    CHECK(k * j == -i);
    CHECK(k * i == j);
    CHECK(i * k == -j);
}

TEST_CASE("quaternion conjugation") {
    std::mt19937_64 g(2);
    for (std::uint32_t m : {3u, 5u, 7u, 11u}) {
        for (int t = 0; t < 2500; ++t) {
            QuatInt a = random_quat(g, m), b = random_quat(g, m);
            CHECK(quat_conj(quat_conj(a)) == a);
            CHECK(quat_conj(a * b) == quat_conj(b) * quat_conj(a)); // order reverses
        }
    }
    // z * conj(z) is a scalar: exhaustively at p = 3, randomly at p = 7.
    for (const QuatInt& z : quat_all(Modulus::of(3))) {
        QuatInt n = z * quat_conj(z);
        CHECK(n.is_scalar());
        CHECK(n.x0 == quat_norm(z));
    }
    for (int t = 0; t < 2000; ++t) {
        QuatInt z = random_quat(g, 7);
        CHECK((z * quat_conj(z)).is_scalar());
    }
}

TEST_CASE("find_ab is the smallest pair") {
    PhiBasis b3 = find_ab(Modulus::of(3));
    CHECK(b3.a.value() == 1);
    CHECK(b3.b.value() == 1);
    PhiBasis b5 = find_ab(Modulus::of(5));
    CHECK(b5.a.value() == 0);
    CHECK(b5.b.value() == 2);

    // independent search oracle
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u, 43u, 47u}) {
        bool found = false;
        for (std::uint32_t a = 0; a < p && !found; ++a)
            for (std::uint32_t b = 0; b < p && !found; ++b)
                if ((a * a + b * b) % p == p - 1) {
                    PhiBasis got = find_ab(Modulus::of(p));
                    CHECK(got.a.value() == a);
                    CHECK(got.b.value() == b);
                    found = true;
                }
        CHECK(found);
    }
    CHECK_THROWS_AS(find_ab(Modulus::of(2)), std::invalid_argument);
    CHECK_THROWS_AS(find_ab(Modulus::of(9)), std::invalid_argument);
}

TEST_CASE("phi basics") {
    PhiBasis basis = find_ab(Modulus::of(3));
    CHECK(phi(QuatInt::of(1, 0, 0, 0, 3), basis) == Mat2::identity(3));
    CHECK(phi(QuatInt::of(0, 1, 0, 0, 3), basis) == Mat2::of(0, 1, 2, 0, 3));
    CHECK(phi(QuatInt::of(0, 0, 1, 0, 3), basis) == Mat2::of(1, 1, 1, 2, 3));
}

TEST_CASE("phi is multiplicative and injective") {
    std::mt19937_64 g(3);
    for (std::uint32_t p : {3u, 5u, 7u}) {
        PhiBasis basis = find_ab(Modulus::of(p));
        for (int t = 0; t < 3500; ++t) {
            QuatInt a = random_quat(g, p), b = random_quat(g, p);
            CHECK(phi(a * b, basis) == phi(a, basis) * phi(b, basis));
            // conjugation intertwines with the adjugate
            CHECK(phi(quat_conj(a), basis) == tilde(phi(a, basis)));
        }
    }
    PhiBasis basis = find_ab(Modulus::of(3));
    std::set<std::array<std::uint32_t, 4>> images;
    for (const QuatInt& z : quat_all(Modulus::of(3))) {
        Mat2 M = phi(z, basis);
        images.insert({M.m1.value(), M.m2.value(), M.m3.value(), M.m4.value()});
    }
    CHECK(images.size() == 81); // bijection on 3^4 elements
}

TEST_CASE("phi_inv") {
    PhiBasis b3 = find_ab(Modulus::of(3));
    CHECK(phi_inv(Mat2::identity(3), b3) == QuatInt::of(1, 0, 0, 0, 3));
    CHECK(phi_inv(Mat2::of(0, 1, 2, 0, 3), b3) == QuatInt::of(0, 1, 0, 0, 3));
    for (const QuatInt& z : quat_all(Modulus::of(3))) CHECK(phi_inv(phi(z, b3), b3) == z);

    std::mt19937_64 g(4);
    for (std::uint32_t p : {5u, 7u}) {
        PhiBasis basis = find_ab(Modulus::of(p));
        for (int t = 0; t < 500; ++t) {
            QuatInt z = random_quat(g, p);
            CHECK(phi_inv(phi(z, basis), basis) == z);
        }
    }

    PhiBasis bad{Modulus::of(5), ModInt(1, 5), ModInt(1, 5)}; // 1 + 1 != -1 mod 5
    CHECK_THROWS_AS(phi_inv(Mat2::identity(5), bad), std::invalid_argument);
}

TEST_CASE("tilde is the adjugate") {
    CHECK(tilde(Mat2::identity(7)) == Mat2::identity(7));
    CHECK(tilde(Mat2::of(1, 2, 0, 1, 5)) == Mat2::of(1, 3, 0, 1, 5));
    std::mt19937_64 g(5);
    for (int t = 0; t < 1000; ++t) {
        Mat2 M = random_mat2(g, 7);
        CHECK(tilde(tilde(M)) == M);
        CHECK(M * tilde(M) == Mat2(M.det(), ModInt(0, 7), ModInt(0, 7), M.det()));
    }
    // anti-multiplicative, like the other two conjugations
    for (std::uint32_t m : {3u, 5u, 7u, 11u}) {
        for (int t = 0; t < 2500; ++t) {
            Mat2 a = random_mat2(g, m), b = random_mat2(g, m);
            CHECK(tilde(a * b) == tilde(b) * tilde(a));
        }
    }
}

TEST_CASE("norm-one quaternions correspond to det-one matrices") {
    Modulus p3 = Modulus::of(3);
    PhiBasis basis = find_ab(p3);
    std::uint64_t norm_one = 0;
    for (const QuatInt& z : quat_all(p3)) {
        bool unit = (z * quat_conj(z)).is_one();
        CHECK(unit == (phi(z, basis).det().value() == 1));
        if (unit) ++norm_one;
    }
    CHECK(norm_one == 24);
    CHECK(sl2_order(p3) == 24);
    CHECK(sl2_order(Modulus::of(5)) == 120);
    CHECK(sl2_set(p3).size() == 24); // exhaustive det filter over 3^4 matrices
    CHECK(quat_norm_one_set(p3).size() == 24);
}
