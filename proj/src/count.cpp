#include "coninv/count.hpp"

#include <stdexcept>

#include "coninv/errors.hpp"
#include "coninv/gauss.hpp"

namespace coninv {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw std::invalid_argument("Partition: no parts");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 1) throw std::invalid_argument("Partition: parts must be positive");
        if (i > 0 && parts[i - 1] > parts[i])
            throw std::invalid_argument("Partition: parts must be nondecreasing");
    }
}

int Partition::sum() const {
    int s = 0;
    for (int v : parts) s += v;
    return s;
}

std::vector<Partition> partitions_of(int n, int max_parts) {
    if (n < 1) throw std::invalid_argument("partitions_of: n must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    // Lexicographic on the nondecreasing tuples.
    auto rec = [&](auto&& self, int remaining, int min_part) -> void {
        if (remaining == 0) {
            out.push_back(Partition(cur));
            return;
        }
        if (static_cast<int>(cur.size()) >= max_parts) return;
        for (int part = min_part; part <= remaining; ++part) {
            cur.push_back(part);
            self(self, remaining - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, 1);
    return out;
}

CountExpr multinomial(int n, const std::vector<int>& parts) {
    int sum = 0;
    for (int v : parts) sum += v;
    if (sum != n) throw std::invalid_argument("multinomial: parts must sum to n");
    CountExpr num = factorial(n);
    for (int v : parts) num /= factorial(v);
    return num;
}

CountExpr g_multiplicity(const Partition& p) {
    CountExpr g = 1;
    std::size_t i = 0;
    while (i < p.parts.size()) {
        std::size_t j = i;
        while (j < p.parts.size() && p.parts[j] == p.parts[i]) ++j;
        g *= factorial(j - i);
        i = j;
    }
    return g;
}

CountExpr gaussian_count(int n, const Modulus& m, UnitMode mode) {
    if (n < 1) throw std::invalid_argument("gaussian_count: n must be >= 1");
    std::uint64_t units;
    if (mode == UnitMode::NormOne) {
        if (!m.is_odd_prime)
            throw std::invalid_argument("gaussian_count: norm-one mode requires an odd prime");
        units = norm_one_count(m);
    } else {
        units = unit_group_order(m);
    }
    return pow_count(units, n) * pow_count(m.m, std::uint64_t(n) * (n - 1) / 2);
}

CountExpr quat_count_partition(int n, std::uint64_t s, const Modulus& p) {
    if (n < 1 || s < 1) throw std::invalid_argument("quat_count_partition: need n, s >= 1");
    CountExpr total = 0;
    int max_j = static_cast<int>(std::min<std::uint64_t>(s, n));
    for (const Partition& part : partitions_of(n, max_j)) {
        int j = part.size();
        // Which distinct diagonal values appear, and where.
        CountExpr coeff = falling_factorial(s, j);
        CountExpr g = g_multiplicity(part);
        if (coeff % g != 0) throw std::logic_error("quat_count_partition: placement not integral");
        coeff /= g;
        coeff *= multinomial(n, part.parts);

        // Exponent bracket n^2 - sum n_u^2 + 3 sum n_u (n_u - 1); always even.
        std::int64_t bracket = std::int64_t(n) * n;
        for (int v : part.parts) {
            bracket -= std::int64_t(v) * v;
            bracket += 3ll * v * (v - 1);
        }
        if (bracket < 0 || bracket % 2 != 0)
            throw std::logic_error("quat_count_partition: exponent bracket is not even");
        total += coeff * pow_count(p.m, std::uint64_t(bracket / 2));
    }
    return total;
}

namespace {

CountExpr compositions_count(int n, std::uint64_t s) {
    // C(n + s - 1, s - 1)
    CountExpr num = 1, den = 1;
    for (std::uint64_t i = 1; i <= std::uint64_t(n); ++i) {
        num *= CountExpr(s - 1 + i);
        den *= i;
    }
    return num / den;
}

} // namespace

CountExpr quat_count_composition(int n, std::uint64_t s, const Modulus& p,
                                 std::uint64_t max_terms) {
    if (n < 1 || s < 1) throw std::invalid_argument("quat_count_composition: need n, s >= 1");
    CountExpr terms = compositions_count(n, s);
    if (terms > max_terms) throw BudgetExceeded("composition enumeration", terms);

    CountExpr total = 0;
    std::vector<int> nonzero;
    // Distribute n over s ordered slots, n_i >= 0; only nonzero slots matter
    // for the multinomial and exponent, zero slots for the placement.
    auto rec = [&](auto&& self, std::uint64_t slot, int remaining) -> void {
        if (slot + 1 == s) {
            nonzero.push_back(remaining); // may be zero; filtered below
            int sq = 0, tri = 0;
            std::vector<int> parts;
            for (int v : nonzero)
                if (v > 0) {
                    parts.push_back(v);
                    sq += v * v;
                    tri += 3 * v * (v - 1) / 2;
                }
            nonzero.pop_back();
            CountExpr coeff = parts.empty() ? CountExpr(1) : multinomial(n, parts);
            if ((std::int64_t(n) * n - sq) % 2 != 0)
                throw std::logic_error("quat_count_composition: odd cross term");
            std::int64_t cross = (std::int64_t(n) * n - sq) / 2;
            total += coeff * pow_count(p.m, std::uint64_t(cross + tri));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            nonzero.push_back(v);
            self(self, slot + 1, remaining - v);
            nonzero.pop_back();
        }
    };
    rec(rec, 0, n);
    return total;
}

} // namespace coninv
