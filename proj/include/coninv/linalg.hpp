#pragma once

#include <vector>

#include "coninv/modint.hpp"

namespace coninv {

// Full solution set of a small dense linear system over Z_p (p prime):
// particular + span(kernel).  Kernel vectors come from the reduced echelon
// form with free columns taken in ascending order, so output is deterministic.
struct LinearSolution {
    bool consistent = false;
    std::vector<ModInt> particular;
    std::vector<std::vector<ModInt>> kernel;

    std::size_t dim() const { return kernel.size(); }
};

LinearSolution solve_mod_p(std::vector<std::vector<ModInt>> a,
                           std::vector<ModInt> rhs,
                           const Modulus& p);

} // namespace coninv
