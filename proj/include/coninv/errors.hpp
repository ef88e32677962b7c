#pragma once

#include <stdexcept>
#include <string>

#include "coninv/bigint.hpp"

namespace coninv {

// A run would exceed the configured candidate/output cap.  `required` is the
// exact amount the run needed; partial results are never reported as totals.
struct BudgetExceeded : std::runtime_error {
    CountExpr required;
    BudgetExceeded(const std::string& what, CountExpr req)
        : std::runtime_error(what + " (requires " + req.str() + ")"), required(std::move(req)) {}
};

// An off-diagonal equation came back unsolvable during a build.  This cannot
// happen for a valid diagonal; it is logged as a finding before being thrown.
struct InconsistentBuild : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace coninv
