#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coninv/errors.hpp"
#include "coninv/gauss.hpp"
#include "coninv/mat2.hpp"
#include "coninv/modint.hpp"
#include "coninv/quat.hpp"
#include "coninv/triangular.hpp"

namespace coninv {

// Affine solution set of one off-diagonal entry's defining equation:
// particular + span(basis) over Z_p.  dim() is the number of free parameters.
template <typename R>
struct AffineSolutionSpace {
    bool consistent = false;
    R particular;
    std::vector<R> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    R at(const std::vector<std::uint32_t>& coeffs) const {
        R v = particular;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::uint32_t c = i < coeffs.size() ? coeffs[i] : 0;
            if (c != 0) v = v + basis[i] * ModInt(c, v.modulus());
        }
        return v;
    }

    // All p^dim solutions; intended for small dims in sweeps and tests.
    std::vector<R> expand_all() const {
        std::uint32_t p = particular.modulus();
        std::vector<R> out;
        std::vector<std::uint32_t> coeffs(basis.size(), 0);
        while (true) {
            out.push_back(at(coeffs));
            std::size_t i = 0;
            while (i < coeffs.size() && ++coeffs[i] == p) coeffs[i++] = 0;
            if (i == coeffs.size()) break;
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Diagonal-pair classification.  The entry equation
//     z_rr * conj(w) + w * conj(z_ss) = rhs
// degenerates differently depending on how z_rr relates to z_ss; the closed
// forms below parametrize each shape directly, the linear solver is the
// case-free ground truth.
// ---------------------------------------------------------------------------

enum class GaussCase {
    ConjMirror,       // z_rr = conj(z_ss): real part pinned, imaginary free
    NegConjMirror,    // z_rr = -conj(z_ss): imaginary part pinned, real free
    EqualReNonzero,   // z_rr = z_ss, Re(z_rr) != 0
    EqualImNonzero,   // z_rr = z_ss, Re(z_rr) = 0
    NegatedReNonzero, // z_rr = -z_ss, Re(z_rr) != 0
    NegatedImNonzero, // z_rr = -z_ss, Re(z_rr) = 0
    Generic,          // none of the above; Re(z_rr + z_ss) is then invertible
};

const char* to_string(GaussCase c);
GaussCase classify_gauss_pair(const GaussInt& z_rr, const GaussInt& z_ss);

// Ground truth: the 2x2 linear system over Z_p in (Re w, Im w).
// Requires |z_rr|^2 = |z_ss|^2 = 1 and odd prime modulus; the kernel then has
// dimension exactly 1.
AffineSolutionSpace<GaussInt> solve_offdiag_gauss(const GaussInt& z_rr, const GaussInt& z_ss,
                                                  const GaussInt& rhs);

// Case-dispatch closed form; must produce the same solution set.
AffineSolutionSpace<GaussInt> closed_form_gauss(const GaussInt& z_rr, const GaussInt& z_ss,
                                                const GaussInt& rhs);

// Block pairs: tags name which entries of Z_rr and Z_ss coincide
// (positions a b / c d vs x y / w z).
enum class BlockCase {
    EqualPivotA, EqualPivotB, EqualPivotC, EqualPivotD, // Z_rr = Z_ss, pivot = first nonzero entry
    OnlyA, OnlyB, OnlyC, OnlyD,                         // exactly one entry coincides
    EqualAB, EqualAC, EqualAD, EqualBC, EqualBD, EqualCD, // exactly two coincide
    AllDiffer,                                          // no entry coincides
    Unclassified,                                       // exactly three coincide: covered by no closed form
};

const char* to_string(BlockCase c);
BlockCase classify_block_pair(const Mat2& z_rr, const Mat2& z_ss);

// Ground truth: the 4x4 linear system over Z_p in the entries of the unknown
// block.  Requires det(Z_rr) = det(Z_ss) = 1 and prime modulus.
AffineSolutionSpace<Mat2> solve_offdiag_block(const Mat2& z_rr, const Mat2& z_ss,
                                              const Mat2& rhs);

struct BlockClosedForm {
    enum class Outcome {
        Ok,
        NotCovered,    // Unclassified pair: no case formula exists
        PivotVanished, // case applies but its pivot quantity is zero (AllDiffer with
                       // det(Z_ss - Z_rr) = 0 and rhs != 0)
    };
    Outcome outcome = Outcome::NotCovered;
    BlockCase tag = BlockCase::Unclassified;
    AffineSolutionSpace<Mat2> space;
};

BlockClosedForm closed_form_block(const Mat2& z_rr, const Mat2& z_ss, const Mat2& rhs);

// Equal-pair formula for an explicit pivot ('a'..'d'); the dispatcher always
// picks the first nonzero pivot, this entry point lets tests exercise the rest.
AffineSolutionSpace<Mat2> closed_form_block_equal(const Mat2& z, const Mat2& rhs, char pivot);

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

struct BuildFinding {
    std::string kind;   // "Inconsistency" | "FormulaMismatch" | "UnclassifiedPair"
    std::string detail;
};

// Free-parameter coefficients per off-diagonal position (1-based r < s).
// Missing positions mean all-zero coefficients; a present tuple must match the
// solution-space dimension at that position.
class ParamAssignment {
public:
    void set(int r, int s, std::vector<std::uint32_t> coeffs) {
        coeffs_[{r, s}] = std::move(coeffs);
    }
    const std::vector<std::uint32_t>* get(int r, int s) const {
        auto it = coeffs_.find({r, s});
        return it == coeffs_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::pair<int, int>, std::vector<std::uint32_t>> coeffs_;
};

// Solver-backed builders (normative).  Diagonal entries must satisfy the
// diagonal criterion (norm one / det one); the result always passes
// is_coninvolution.
UpperTri<GaussInt> build_solver_gauss(const std::vector<GaussInt>& diag,
                                      const ParamAssignment& params,
                                      std::vector<BuildFinding>* findings = nullptr);
UpperTri<Mat2> build_solver_block(const std::vector<Mat2>& diag,
                                  const ParamAssignment& params,
                                  std::vector<BuildFinding>* findings = nullptr);

// Closed-form builders: per-case formulas where they exist, solver fallback
// (with an UnclassifiedPair finding) where they do not.  A case formula whose
// output fails its defining equation is logged as FormulaMismatch and the
// solver result is used instead.
UpperTri<GaussInt> build_closed_form_gauss(const std::vector<GaussInt>& diag,
                                           const ParamAssignment& params,
                                           std::vector<BuildFinding>* findings = nullptr);
UpperTri<Mat2> build_closed_form_block(const std::vector<Mat2>& diag,
                                       const ParamAssignment& params,
                                       std::vector<BuildFinding>* findings = nullptr);

// Quaternion coninvolutions are built in the 2x2 block representation and
// mapped back through the isomorphism.
UpperTri<QuatInt> build_quaternion(const std::vector<QuatInt>& diag,
                                   const ParamAssignment& params, const PhiBasis& basis,
                                   std::vector<BuildFinding>* findings = nullptr);

// ---------------------------------------------------------------------------
// Exhaustive enumeration and uniform sampling (odd prime modulus)
// ---------------------------------------------------------------------------

// Emits each coninvolution exactly once (asserted by hashing up to 10^6
// matrices); throws BudgetExceeded with the exact total if it would exceed
// max_matrices.
void enumerate_gauss(int n, const Modulus& p, std::uint64_t max_matrices,
                     const std::function<void(const UpperTri<GaussInt>&)>& sink);
void enumerate_block(int n, const Modulus& p, std::uint64_t max_matrices,
                     const std::function<void(const UpperTri<Mat2>&)>& sink);
void enumerate_quat(int n, const Modulus& p, std::uint64_t max_matrices,
                    const std::function<void(const UpperTri<QuatInt>&)>& sink);

// Uniform over all coninvolutions; deterministic for a fixed seed.
UpperTri<GaussInt> sample_gauss(int n, const Modulus& p, std::uint64_t seed);
UpperTri<Mat2> sample_block(int n, const Modulus& p, std::uint64_t seed);
UpperTri<QuatInt> sample_quat(int n, const Modulus& p, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Pair sweeps: structural checks over every admissible diagonal pair
// ---------------------------------------------------------------------------

struct GaussSweep {
    int pairs = 0;
    // Pairs whose homogeneous kernel does not have exactly p elements.
    std::vector<std::string> kernel_violations;
    // Generic-case pairs where Re(z_rr + z_ss) is not invertible.
    std::vector<std::string> pivot_violations;
    std::uint64_t formula_checks = 0;
    std::uint64_t formula_mismatches = 0;
    std::vector<std::string> mismatch_examples;
};

// exhaustive_rhs: additionally checks closed form against the solver for every
// consistent right-hand side of every pair (exact set equality).
GaussSweep sweep_gauss_pairs(const Modulus& p, bool exhaustive_rhs);

struct BlockSweep {
    int pairs = 0;
    std::map<std::string, int> case_histogram;
    // Unequal pairs with kernel dimension != 1 or equal pairs with != 3.
    std::vector<std::string> dim_findings;
    std::map<std::string, int> unclassified_patterns;
    std::string unclassified_example;
    std::uint64_t formula_checks = 0;
    std::uint64_t formula_mismatches = 0;
    std::vector<std::string> mismatch_examples;
    // Consistent rhs where the covering case exists but its pivot vanished
    // (solver fallback path).
    std::uint64_t fallback_rhs_events = 0;
};

BlockSweep sweep_block_pairs(const Modulus& p, bool exhaustive_rhs);

} // namespace coninv
