#include "coninv/linalg.hpp"

#include <stdexcept>

namespace coninv {

LinearSolution solve_mod_p(std::vector<std::vector<ModInt>> a,
                           std::vector<ModInt> rhs,
                           const Modulus& p) {
    if (!p.is_prime) throw std::invalid_argument("solve_mod_p: modulus must be prime");
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    if (rhs.size() != rows) throw std::invalid_argument("solve_mod_p: rhs size mismatch");

    // Gauss-Jordan to reduced echelon form, exact arithmetic.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(rhs[piv], rhs[r]);
        ModInt inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            ModInt f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_col.push_back(c);
        ++r;
    }

    LinearSolution out;
    for (std::size_t i = r; i < rows; ++i)
        if (!rhs[i].is_zero()) return out; // consistent stays false
    out.consistent = true;

    ModInt zero(0, p.m);
    out.particular.assign(cols, zero);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) out.particular[pivot_col[i]] = rhs[i];

    // One kernel vector per free column, ascending; deterministic.
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<ModInt> v(cols, zero);
        v[c] = ModInt(1, p.m);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][c];
        out.kernel.push_back(std::move(v));
    }
    return out;
}

} // namespace coninv
