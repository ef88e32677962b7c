#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coninv/bigint.hpp"
#include "coninv/construct.hpp"
#include "coninv/errors.hpp"
#include "coninv/modint.hpp"

namespace coninv {

// Caps for exhaustive runs.  Exceeding either aborts with the exact
// requirement; a partial count is never reported as a total.
struct OracleBudget {
    std::uint64_t max_candidates = 100'000'000;
    double max_seconds = 600.0;
};

enum class RingKind { Gauss, Block, QuatRaw };

const char* to_string(RingKind r);

// Exhaustive filter over all upper-triangular matrices with entries in the
// ring: counts those with A * conj(A) = I.  Candidate generation iterates raw
// entry tuples and never touches the constructive machinery.  key_sink, when
// given, receives the canonical key of every hit (for set-equality checks).
CountExpr brute_count(int n, const Modulus& m, RingKind ring, const OracleBudget& budget,
                      const std::function<void(const std::vector<std::uint32_t>&)>* key_sink = nullptr);

// Walks every diagonal tuple, builds column by column through the linear
// solver, and accumulates the product of solution-space sizes.  Consistency is
// verified for every reachable right-hand side by full parameter expansion
// when n <= 3 and by sampled parameter paths when n > 3.  A diagonal admitting
// no completion is recorded as a finding and contributes its true count.
CountExpr solver_count(int n, const Modulus& p, RingKind ring, const OracleBudget& budget,
                       std::vector<BuildFinding>* findings = nullptr);

struct SetEqualityResult {
    bool equal = false;
    CountExpr brute_size;
    CountExpr enumerated_size;
    // Render of one matrix present on exactly one side, when unequal.
    std::string witness;
};

// Compares the constructive enumeration against the brute-force set.
SetEqualityResult set_equality(int n, const Modulus& p, RingKind ring,
                               const OracleBudget& budget);

} // namespace coninv
