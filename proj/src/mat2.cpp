#include "coninv/mat2.hpp"

#include <stdexcept>

#include "coninv/linalg.hpp"

namespace coninv {

PhiBasis find_ab(const Modulus& p) {
    if (!p.is_odd_prime) throw std::invalid_argument("find_ab: modulus must be an odd prime");
    for (std::uint32_t a = 0; a < p.m; ++a)
        for (std::uint32_t b = 0; b < p.m; ++b) {
            std::uint64_t s = (std::uint64_t(a) * a + std::uint64_t(b) * b) % p.m;
            if (s == p.m - 1) return PhiBasis{p, ModInt(a, p.m), ModInt(b, p.m)};
        }
    throw std::logic_error("find_ab: no pair found (impossible for an odd prime)");
}

namespace {

// The four images of 1, i, j, k under phi.
void phi_basis_matrices(const PhiBasis& basis, Mat2 out[4]) {
    std::uint32_t m = basis.p.m;
    ModInt a = basis.a, b = basis.b;
    out[0] = Mat2::identity(m);
    out[1] = Mat2(ModInt(0, m), ModInt(1, m), -ModInt(1, m), ModInt(0, m));
    out[2] = Mat2(a, b, b, -a);
    out[3] = Mat2(b, -a, -a, -b);
}

} // namespace

Mat2 phi(const QuatInt& z, const PhiBasis& basis) {
    assert(z.modulus() == basis.p.m);
    Mat2 bm[4];
    phi_basis_matrices(basis, bm);
    return bm[0] * z.x0 + bm[1] * z.x1 + bm[2] * z.x2 + bm[3] * z.x3;
}

QuatInt phi_inv(const Mat2& M, const PhiBasis& basis) {
    ModInt nb = basis.a * basis.a + basis.b * basis.b + ModInt(1, basis.p.m);
    if (!nb.is_zero()) throw std::invalid_argument("phi_inv: basis does not satisfy a^2+b^2 = -1");
    Mat2 bm[4];
    phi_basis_matrices(basis, bm);
    // Columns are the flattened basis matrices; the system is invertible
    // because phi is a bijection.
    std::vector<std::vector<ModInt>> A(4, std::vector<ModInt>(4, ModInt(0, basis.p.m)));
    for (int c = 0; c < 4; ++c) {
        A[0][c] = bm[c].m1;
        A[1][c] = bm[c].m2;
        A[2][c] = bm[c].m3;
        A[3][c] = bm[c].m4;
    }
    LinearSolution sol = solve_mod_p(A, {M.m1, M.m2, M.m3, M.m4}, basis.p);
    if (!sol.consistent || !sol.kernel.empty())
        throw std::logic_error("phi_inv: basis matrices are not independent");
    return QuatInt(sol.particular[0], sol.particular[1], sol.particular[2], sol.particular[3]);
}

std::vector<Mat2> mat2_all(const Modulus& m) {
    std::vector<Mat2> out;
    out.reserve(std::size_t(m.m) * m.m * m.m * m.m);
    for (std::uint32_t a = 0; a < m.m; ++a)
        for (std::uint32_t b = 0; b < m.m; ++b)
            for (std::uint32_t c = 0; c < m.m; ++c)
                for (std::uint32_t d = 0; d < m.m; ++d) out.push_back(Mat2::of(a, b, c, d, m.m));
    return out;
}

std::vector<Mat2> sl2_set(const Modulus& p) {
    std::vector<Mat2> out;
    for (std::uint32_t a = 0; a < p.m; ++a)
        for (std::uint32_t b = 0; b < p.m; ++b)
            for (std::uint32_t c = 0; c < p.m; ++c)
                for (std::uint32_t d = 0; d < p.m; ++d) {
                    Mat2 M = Mat2::of(a, b, c, d, p.m);
                    if (M.det().value() == 1) out.push_back(M);
                }
    return out;
}

std::uint64_t sl2_order(const Modulus& p) {
    std::uint64_t q = p.m;
    return (q * q - 1) * q;
}

} // namespace coninv
