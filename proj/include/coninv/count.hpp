#pragma once

#include <cstdint>
#include <vector>

#include "coninv/bigint.hpp"
#include "coninv/modint.hpp"

namespace coninv {

// Nondecreasing positive parts summing to n.
struct Partition {
    std::vector<int> parts;

    explicit Partition(std::vector<int> p);
    int sum() const;
    int size() const { return static_cast<int>(parts.size()); }
};

// All partitions of n with at most max_parts parts, deterministic order
// (lexicographic on the nondecreasing tuples).
std::vector<Partition> partitions_of(int n, int max_parts);

// n! / prod(parts!); parts must sum to n.
CountExpr multinomial(int n, const std::vector<int>& parts);

// Product of factorials of run lengths of equal parts.
CountExpr g_multiplicity(const Partition& p);

enum class UnitMode { NormOne, FullUnits };

// |U|^n * m^(n(n-1)/2).  NormOne requires an odd prime and counts the
// norm-one set; FullUnits accepts any m >= 2 and counts the whole unit group
// (the reading the published table uses).
CountExpr gaussian_count(int n, const Modulus& m, UnitMode mode);

// Partition-sum count for the block/quaternion ring with s admissible
// diagonal values:
//   sum over partitions (n_1 <= ... <= n_j, j <= min(s, n)) of
//     s!/(s-j)! / g * multinomial(n; parts) * p^e,
//   e = (n^2 - sum n_u^2 + 3 sum n_u (n_u - 1)) / 2.
// The bracket is always even; this is asserted rather than assumed.
CountExpr quat_count_partition(int n, std::uint64_t s, const Modulus& p);

// Composition-sum form: all (n_1, ..., n_s) with n_i >= 0 summing to n,
//   multinomial * p^(sum_{i<j} n_i n_j) * p^(3 sum n_i(n_i-1)/2).
// Must equal the partition form wherever both are computed.  Throws
// BudgetExceeded when the composition count would exceed max_terms.
CountExpr quat_count_composition(int n, std::uint64_t s, const Modulus& p,
                                 std::uint64_t max_terms = 10'000'000);

} // namespace coninv
