#include "coninv/construct.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "coninv/count.hpp"
#include "coninv/linalg.hpp"

namespace coninv {

namespace {

// Rejection-sampled bounded uniform on top of mt19937_64; identical output on
// every platform for a fixed seed, unlike std::uniform_int_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do { v = g_(); } while (v >= limit);
        return v % bound;
    }

private:
    std::mt19937_64 g_;
};

std::string key_string(const std::vector<std::uint32_t>& key) {
    std::string s;
    s.reserve(key.size() * 4);
    for (auto v : key) {
        s.push_back(char(v & 0xff));
        s.push_back(char((v >> 8) & 0xff));
        s.push_back(char((v >> 16) & 0xff));
        s.push_back(char((v >> 24) & 0xff));
    }
    return s;
}

} // namespace

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

const char* to_string(GaussCase c) {
    switch (c) {
        case GaussCase::ConjMirror: return "conj-mirror";
        case GaussCase::NegConjMirror: return "neg-conj-mirror";
        case GaussCase::EqualReNonzero: return "equal-re-pivot";
        case GaussCase::EqualImNonzero: return "equal-im-pivot";
        case GaussCase::NegatedReNonzero: return "negated-re-pivot";
        case GaussCase::NegatedImNonzero: return "negated-im-pivot";
        case GaussCase::Generic: return "generic";
    }
    return "?";
}

GaussCase classify_gauss_pair(const GaussInt& z_rr, const GaussInt& z_ss) {
    GaussInt cs = gauss_conj(z_ss);
    if (z_rr == cs) return GaussCase::ConjMirror;
    if (z_rr == -cs) return GaussCase::NegConjMirror;
    if (z_rr == z_ss)
        return z_rr.re.is_zero() ? GaussCase::EqualImNonzero : GaussCase::EqualReNonzero;
    if (z_rr == -z_ss)
        return z_rr.re.is_zero() ? GaussCase::NegatedImNonzero : GaussCase::NegatedReNonzero;
    return GaussCase::Generic;
}

const char* to_string(BlockCase c) {
    switch (c) {
        case BlockCase::EqualPivotA: return "equal-pivot-a";
        case BlockCase::EqualPivotB: return "equal-pivot-b";
        case BlockCase::EqualPivotC: return "equal-pivot-c";
        case BlockCase::EqualPivotD: return "equal-pivot-d";
        case BlockCase::OnlyA: return "only-a-equal";
        case BlockCase::OnlyB: return "only-b-equal";
        case BlockCase::OnlyC: return "only-c-equal";
        case BlockCase::OnlyD: return "only-d-equal";
        case BlockCase::EqualAB: return "ab-equal";
        case BlockCase::EqualAC: return "ac-equal";
        case BlockCase::EqualAD: return "ad-equal";
        case BlockCase::EqualBC: return "bc-equal";
        case BlockCase::EqualBD: return "bd-equal";
        case BlockCase::EqualCD: return "cd-equal";
        case BlockCase::AllDiffer: return "all-differ";
        case BlockCase::Unclassified: return "unclassified";
    }
    return "?";
}

BlockCase classify_block_pair(const Mat2& z_rr, const Mat2& z_ss) {
    bool ea = z_rr.m1 == z_ss.m1;
    bool eb = z_rr.m2 == z_ss.m2;
    bool ec = z_rr.m3 == z_ss.m3;
    bool ed = z_rr.m4 == z_ss.m4;
    int k = int(ea) + int(eb) + int(ec) + int(ed);
    if (k == 4) {
        if (!z_rr.m1.is_zero()) return BlockCase::EqualPivotA;
        if (!z_rr.m2.is_zero()) return BlockCase::EqualPivotB;
        if (!z_rr.m3.is_zero()) return BlockCase::EqualPivotC;
        return BlockCase::EqualPivotD;
    }
    if (k == 0) return BlockCase::AllDiffer;
    if (k == 1) {
        if (ea) return BlockCase::OnlyA;
        if (eb) return BlockCase::OnlyB;
        if (ec) return BlockCase::OnlyC;
        return BlockCase::OnlyD;
    }
    if (k == 2) {
        if (ea && eb) return BlockCase::EqualAB;
        if (ea && ec) return BlockCase::EqualAC;
        if (ea && ed) return BlockCase::EqualAD;
        if (eb && ec) return BlockCase::EqualBC;
        if (eb && ed) return BlockCase::EqualBD;
        return BlockCase::EqualCD;
    }
    return BlockCase::Unclassified; // exactly three entries coincide
}

// ---------------------------------------------------------------------------
// Solver route (ground truth)
// ---------------------------------------------------------------------------

AffineSolutionSpace<GaussInt> solve_offdiag_gauss(const GaussInt& z_rr, const GaussInt& z_ss,
                                                  const GaussInt& rhs) {
    const std::uint32_t m = z_rr.modulus();
    Modulus p = Modulus::of(m);
    // z_rr * conj(w) + w * conj(z_ss) = rhs as a 2x2 system in (Re w, Im w):
    //   [a+x  b+y] [Re w]   [Re rhs]
    //   [b-y  x-a] [Im w] = [Im rhs]
    ModInt a = z_rr.re, b = z_rr.im, x = z_ss.re, y = z_ss.im;
    std::vector<std::vector<ModInt>> sys = {{a + x, b + y}, {b - y, x - a}};
    LinearSolution sol = solve_mod_p(sys, {rhs.re, rhs.im}, p);
    AffineSolutionSpace<GaussInt> out;
    out.consistent = sol.consistent;
    if (!sol.consistent) {
        out.particular = GaussInt::of(0, 0, m);
        return out;
    }
    out.particular = GaussInt(sol.particular[0], sol.particular[1]);
    for (const auto& v : sol.kernel) out.basis.push_back(GaussInt(v[0], v[1]));
    return out;
}

AffineSolutionSpace<Mat2> solve_offdiag_block(const Mat2& z_rr, const Mat2& z_ss,
                                              const Mat2& rhs) {
    const std::uint32_t mm = z_rr.modulus();
    Modulus p = Modulus::of(mm);
    ModInt a = z_rr.m1, b = z_rr.m2, c = z_rr.m3, d = z_rr.m4;
    ModInt x = z_ss.m1, y = z_ss.m2, w = z_ss.m3, z = z_ss.m4;
    ModInt zero(0, mm);
    // Z_rr * tilde(Z_rs) + Z_rs * tilde(Z_ss) = rhs, unknowns row-major.
    std::vector<std::vector<ModInt>> sys = {
        {z, -w, -b, a},
        {b - y, x - a, zero, zero},
        {zero, zero, z - d, c - w},
        {d, -c, -y, x},
    };
    LinearSolution sol = solve_mod_p(sys, {rhs.m1, rhs.m2, rhs.m3, rhs.m4}, p);
    AffineSolutionSpace<Mat2> out;
    out.consistent = sol.consistent;
    if (!sol.consistent) {
        out.particular = Mat2::zero(mm);
        return out;
    }
    out.particular = Mat2(sol.particular[0], sol.particular[1], sol.particular[2], sol.particular[3]);
    for (const auto& v : sol.kernel) out.basis.push_back(Mat2(v[0], v[1], v[2], v[3]));
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

AffineSolutionSpace<GaussInt> closed_form_gauss(const GaussInt& z_rr, const GaussInt& z_ss,
                                                const GaussInt& rhs) {
    const std::uint32_t m = z_rr.modulus();
    const ModInt inv2 = ModInt(2, m).inverse();
    const GaussInt iu = GaussInt::of(0, 1, m);
    ModInt a = z_rr.re, b = z_rr.im;

    AffineSolutionSpace<GaussInt> out;
    out.consistent = true;
    switch (classify_gauss_pair(z_rr, z_ss)) {
        case GaussCase::ConjMirror:
            // 2 z_rr Re(w) = rhs: real part pinned, w = z_rr^-1 rhs / 2 + i t.
            out.particular = gauss_inverse(z_rr) * rhs * inv2;
            out.basis = {iu};
            break;
        case GaussCase::NegConjMirror:
            // -2i z_rr Im(w) = rhs: w = -z_rr^-1 rhs / 2 + t.
            out.particular = -(gauss_inverse(z_rr) * rhs * inv2);
            out.basis = {GaussInt::of(1, 0, m)};
            break;
        case GaussCase::EqualReNonzero:
            // 2a Re(w) + 2b Im(w) = Re(rhs), Im(rhs) = 0.
            out.particular = rhs * ((a + a).inverse());
            out.basis = {GaussInt(-(a.inverse() * b), ModInt(1, m))};
            break;
        case GaussCase::EqualImNonzero:
            out.particular = iu * rhs * ((b + b).inverse());
            out.basis = {GaussInt(ModInt(1, m), -(b.inverse() * a))};
            break;
        case GaussCase::NegatedReNonzero:
            // 2b Re(w) - 2a Im(w) = Im(rhs), Re(rhs) = 0.
            out.particular = -(rhs * ((a + a).inverse()));
            out.basis = {GaussInt(ModInt(1, m), a.inverse() * b)};
            break;
        case GaussCase::NegatedImNonzero:
            out.particular = -(iu * rhs * ((b + b).inverse()));
            out.basis = {GaussInt(b.inverse() * a, ModInt(1, m))};
            break;
        case GaussCase::Generic: {
            // Rank-one system; Re(z_rr + z_ss) is invertible on this branch.
            ModInt sigma = z_rr.re + z_ss.re;
            out.particular = GaussInt(sigma.inverse() * rhs.re, ModInt(0, m));
            out.basis = {GaussInt(-(sigma.inverse() * (z_rr.im + z_ss.im)), ModInt(1, m))};
            break;
        }
    }
    // A particular solution failing its own equation means the rhs was not in
    // the image (invalid partial matrix upstream).
    GaussInt check = z_rr * gauss_conj(out.particular) + out.particular * gauss_conj(z_ss);
    if (check != rhs) {
        out.consistent = false;
        out.basis.clear();
        out.particular = GaussInt::of(0, 0, m);
    }
    return out;
}

AffineSolutionSpace<Mat2> closed_form_block_equal(const Mat2& zb, const Mat2& rhs, char pivot) {
    const std::uint32_t m = zb.modulus();
    ModInt a = zb.m1, b = zb.m2, c = zb.m3, d = zb.m4;
    ModInt z0(0, m), z1(1, m);
    AffineSolutionSpace<Mat2> out;
    out.consistent = true;
    // Single equation d t1 - c t2 - b t3 + a t4 = A with B = C = 0, A = D.
    ModInt A = rhs.m1;
    switch (pivot) {
        case 'a': {
            ModInt ai = a.inverse();
            out.particular = Mat2(z0, z0, z0, ai * A);
            out.basis = {Mat2(z1, z0, z0, -(ai * d)), Mat2(z0, z1, z0, ai * c),
                         Mat2(z0, z0, z1, ai * b)};
            break;
        }
        case 'b': {
            ModInt bi = b.inverse();
            out.particular = Mat2(z0, z0, -(bi * A), z0);
            out.basis = {Mat2(z1, z0, bi * d, z0), Mat2(z0, z1, -(bi * c), z0),
                         Mat2(z0, z0, bi * a, z1)};
            break;
        }
        case 'c': {
            ModInt ci = c.inverse();
            out.particular = Mat2(z0, -(ci * A), z0, z0);
            out.basis = {Mat2(z1, ci * d, z0, z0), Mat2(z0, -(ci * b), z1, z0),
                         Mat2(z0, ci * a, z0, z1)};
            break;
        }
        case 'd': {
            ModInt di = d.inverse();
            out.particular = Mat2(di * A, z0, z0, z0);
            out.basis = {Mat2(di * c, z1, z0, z0), Mat2(di * b, z0, z1, z0),
                         Mat2(-(di * a), z0, z0, z1)};
            break;
        }
        default:
            throw std::invalid_argument("closed_form_block_equal: pivot must be one of a,b,c,d");
    }
    Mat2 check = zb * tilde(out.particular) + out.particular * tilde(zb);
    if (check != rhs) {
        out.consistent = false;
        out.basis.clear();
        out.particular = Mat2::zero(m);
    }
    return out;
}

BlockClosedForm closed_form_block(const Mat2& z_rr, const Mat2& z_ss, const Mat2& rhs) {
    const std::uint32_t m = z_rr.modulus();
    ModInt a = z_rr.m1, b = z_rr.m2, c = z_rr.m3, d = z_rr.m4;
    ModInt x = z_ss.m1, y = z_ss.m2, w = z_ss.m3, z = z_ss.m4;
    ModInt A = rhs.m1, B = rhs.m2, C = rhs.m3, D = rhs.m4;
    ModInt z0(0, m), one(1, m);

    BlockClosedForm res;
    res.tag = classify_block_pair(z_rr, z_ss);
    auto& out = res.space;
    out.consistent = true;

    auto vanished = [&res]() {
        res.outcome = BlockClosedForm::Outcome::PivotVanished;
        return res;
    };

    switch (res.tag) {
        case BlockCase::EqualPivotA:
            res.space = closed_form_block_equal(z_rr, rhs, 'a');
            break;
        case BlockCase::EqualPivotB:
            res.space = closed_form_block_equal(z_rr, rhs, 'b');
            break;
        case BlockCase::EqualPivotC:
            res.space = closed_form_block_equal(z_rr, rhs, 'c');
            break;
        case BlockCase::EqualPivotD:
            res.space = closed_form_block_equal(z_rr, rhs, 'd');
            break;

        case BlockCase::OnlyA: {
            ModInt u = (b - y).inverse(), v = (c - w).inverse(), t = (z - d).inverse();
            ModInt W = A - D - (z - d) * u * B;
            out.particular = Mat2(u * B, v * W - t * v * (y - b) * C, t * C, z0);
            out.basis = {Mat2(z0, t * (y - b), -(t * (c - w)), one)};
            break;
        }
        case BlockCase::OnlyB: {
            ModInt q = (x - a).inverse(), v = (c - w).inverse(), t = (z - d).inverse();
            ModInt W = A - D - (c - w) * q * B;
            out.particular = Mat2(t * W - t * v * (a - x) * C, q * B, z0, v * C);
            out.basis = {Mat2(v * (a - x), z0, one, -(v * (z - d)))};
            break;
        }
        case BlockCase::OnlyC: {
            ModInt u = (b - y).inverse(), t = (z - d).inverse(), q = (a - x).inverse();
            ModInt W = A - D - (y - b) * t * C;
            out.particular = Mat2(u * B, z0, t * C, q * W - u * q * (z - d) * B);
            out.basis = {Mat2(-(u * (x - a)), one, z0, -(u * (z - d)))};
            break;
        }
        case BlockCase::OnlyD: {
            ModInt q = (x - a).inverse(), v = (c - w).inverse(), u2 = (y - b).inverse();
            ModInt W = A - D - (a - x) * v * C;
            out.particular = Mat2(z0, q * B, u2 * W - q * u2 * (c - w) * B, v * C);
            out.basis = {Mat2(one, -((b - y) * q), -(q * (c - w)), z0)};
            break;
        }

        case BlockCase::EqualAB: {
            // Determinant matching forces b(c-w) + a(z-d) = 0 here, so the
            // (1,2) unknown is pinned through zc - wd (never zero on this
            // branch) and the (2,2) unknown is the free one.
            ModInt mu = z * c - w * d;
            if (mu.is_zero()) return vanished();
            ModInt t = (z - d).inverse();
            ModInt t2 = mu.inverse() * (d * A - b * C - z * D);
            out.particular = Mat2(t * ((A - D) - (c - w) * t2), t2, t * C, z0);
            out.basis = {Mat2(z0, z0, -(t * (c - w)), one)};
            break;
        }
        case BlockCase::EqualAC: {
            // w = 0 would force z = d via the determinants; unreachable here.
            if (w.is_zero()) return vanished();
            ModInt u = (b - y).inverse(), t = (z - d).inverse(), wi = w.inverse();
            out.particular =
                Mat2(u * B, -(wi * (A - z * u * B + b * t * C)), t * C, z0);
            out.basis = {Mat2(z0, wi * a, z0, one)};
            break;
        }
        case BlockCase::EqualAD: {
            ModInt u = (b - y).inverse(), v = (c - w).inverse();
            out.particular = Mat2(u * B, v * (A - D), z0, v * C);
            out.basis = {Mat2(z0, -(v * (y - b)), one, z0)};
            break;
        }
        case BlockCase::EqualBC: {
            ModInt t = (z - d).inverse(), q = (x - a).inverse();
            out.particular = Mat2(t * (A - D), q * B, t * C, z0);
            out.basis = {Mat2(-(t * (a - x)), z0, z0, one)};
            break;
        }
        case BlockCase::EqualBD: {
            // z = 0 would force c = w via the determinants; unreachable here.
            if (z.is_zero()) return vanished();
            ModInt q = (x - a).inverse(), v = (c - w).inverse(), zi = z.inverse();
            out.particular = Mat2(zi * (A + w * q * B - a * v * C), q * B, z0, v * C);
            out.basis = {Mat2(zi * b, z0, one, z0)};
            break;
        }
        case BlockCase::EqualCD: {
            // Mirror of the ab-equal shape: ay - bx never vanishes on this
            // branch, pinning the (2,2) unknown; the (1,2) unknown is free.
            ModInt nu = a * y - b * x;
            if (nu.is_zero()) return vanished();
            ModInt u = (b - y).inverse(), u2 = (y - b).inverse();
            ModInt t4 = nu.inverse() * (y * A + d * B - b * D);
            out.particular = Mat2(u * B, z0, u2 * ((A - D) - (a - x) * t4), t4);
            out.basis = {Mat2(u * (a - x), one, z0, z0)};
            break;
        }
        case BlockCase::AllDiffer: {
            ModInt t = (z - d).inverse(), u = (b - y).inverse();
            out.basis = {Mat2((x - a) * t, -(t * (b - y)), -(t * (c - w)), one)};
            if (rhs.is_zero()) {
                out.particular = Mat2::zero(m);
            } else {
                ModInt theta = (x - a) * (z - d) - (y - b) * (w - c);
                if (theta.is_zero()) return vanished();
                ModInt E = (z - d) * ((b - y) * (A - D) - (z - d) * B) + (b - y) * (b - y) * C;
                ModInt ti = theta.inverse();
                out.particular =
                    Mat2(u * (B + (x - a) * t * ti * E), -(t * ti * E), t * C, z0);
            }
            break;
        }
        case BlockCase::Unclassified:
            res.outcome = BlockClosedForm::Outcome::NotCovered;
            return res;
    }

    res.outcome = BlockClosedForm::Outcome::Ok;
    if (res.tag >= BlockCase::OnlyA && res.tag <= BlockCase::AllDiffer) {
        Mat2 check = z_rr * tilde(out.particular) + out.particular * tilde(z_ss);
        if (check != rhs) {
            out.consistent = false;
            out.basis.clear();
            out.particular = Mat2::zero(m);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace {

template <typename R>
std::size_t tri_index(int n, int r, int s) {
    return std::size_t(r - 1) * n - std::size_t(r - 1) * (r - 2) / 2 + std::size_t(s - r);
}

template <typename R, typename Solve>
UpperTri<R> build_walk(const std::vector<R>& diag, const ParamAssignment& params,
                       Solve&& solve, std::vector<BuildFinding>* findings) {
    const int n = static_cast<int>(diag.size());
    if (n < 1) throw std::invalid_argument("build: empty diagonal");
    const std::uint32_t m = diag[0].modulus();

    std::vector<R> grid(std::size_t(n) * (n + 1) / 2, RingTraits<R>::zero(m));
    for (int r = 1; r <= n; ++r) grid[tri_index<R>(n, r, r)] = diag[r - 1];

    for (int span = 1; span < n; ++span) {
        for (int r = 1; r + span <= n; ++r) {
            int s = r + span;
            R rhs = RingTraits<R>::zero(m);
            for (int t = r + 1; t < s; ++t)
                rhs = rhs - grid[tri_index<R>(n, r, t)] * RingTraits<R>::conj(grid[tri_index<R>(n, t, s)]);
            AffineSolutionSpace<R> space = solve(diag[r - 1], diag[s - 1], rhs, r, s);
            if (!space.consistent) {
                if (findings)
                    findings->push_back({"Inconsistency",
                                         "entry (" + std::to_string(r) + "," + std::to_string(s) +
                                             ") admits no solution"});
                throw InconsistentBuild("no solution for entry (" + std::to_string(r) + "," +
                                        std::to_string(s) + ")");
            }
            const std::vector<std::uint32_t>* coeffs = params.get(r, s);
            if (coeffs && static_cast<int>(coeffs->size()) != space.dim())
                throw std::invalid_argument("params at (" + std::to_string(r) + "," +
                                            std::to_string(s) + ") must have " +
                                            std::to_string(space.dim()) + " coefficients");
            grid[tri_index<R>(n, r, s)] =
                coeffs ? space.at(*coeffs) : space.at(std::vector<std::uint32_t>{});
        }
    }

    UpperTri<R> out(n, m, std::move(grid));
    if (!is_coninvolution(out))
        throw std::logic_error("builder postcondition violated: output is not a coninvolution");
    return out;
}

void require_gauss_diag(const std::vector<GaussInt>& diag) {
    for (const auto& z : diag)
        if (gauss_norm(z).value() != 1)
            throw std::invalid_argument("diagonal entry " + z.str() + " does not have norm 1");
}

void require_block_diag(const std::vector<Mat2>& diag) {
    for (const auto& z : diag)
        if (z.det().value() != 1)
            throw std::invalid_argument("diagonal block " + z.str() + " does not have det 1");
}

} // namespace

UpperTri<GaussInt> build_solver_gauss(const std::vector<GaussInt>& diag,
                                      const ParamAssignment& params,
                                      std::vector<BuildFinding>* findings) {
    require_gauss_diag(diag);
    return build_walk<GaussInt>(
        diag, params,
        [](const GaussInt& zr, const GaussInt& zs, const GaussInt& rhs, int, int) {
            return solve_offdiag_gauss(zr, zs, rhs);
        },
        findings);
}

UpperTri<Mat2> build_solver_block(const std::vector<Mat2>& diag, const ParamAssignment& params,
                                  std::vector<BuildFinding>* findings) {
    require_block_diag(diag);
    return build_walk<Mat2>(
        diag, params,
        [](const Mat2& zr, const Mat2& zs, const Mat2& rhs, int, int) {
            return solve_offdiag_block(zr, zs, rhs);
        },
        findings);
}

UpperTri<GaussInt> build_closed_form_gauss(const std::vector<GaussInt>& diag,
                                           const ParamAssignment& params,
                                           std::vector<BuildFinding>* findings) {
    require_gauss_diag(diag);
    return build_walk<GaussInt>(
        diag, params,
        [findings](const GaussInt& zr, const GaussInt& zs, const GaussInt& rhs, int r, int s) {
            AffineSolutionSpace<GaussInt> cf = closed_form_gauss(zr, zs, rhs);
            AffineSolutionSpace<GaussInt> sv = solve_offdiag_gauss(zr, zs, rhs);
            if (!cf.consistent && sv.consistent) {
                if (findings)
                    findings->push_back({"FormulaMismatch",
                                         std::string(to_string(classify_gauss_pair(zr, zs))) +
                                             " at (" + std::to_string(r) + "," + std::to_string(s) +
                                             "): z_rr=" + zr.str() + " z_ss=" + zs.str() +
                                             " rhs=" + rhs.str()});
                return sv;
            }
            return cf;
        },
        findings);
}

UpperTri<Mat2> build_closed_form_block(const std::vector<Mat2>& diag,
                                       const ParamAssignment& params,
                                       std::vector<BuildFinding>* findings) {
    require_block_diag(diag);
    return build_walk<Mat2>(
        diag, params,
        [findings](const Mat2& zr, const Mat2& zs, const Mat2& rhs, int r, int s) {
            BlockClosedForm cf = closed_form_block(zr, zs, rhs);
            auto position = [&] {
                return " at (" + std::to_string(r) + "," + std::to_string(s) + "): Z_rr=" +
                       zr.str() + " Z_ss=" + zs.str() + " rhs=" + rhs.str();
            };
            if (cf.outcome == BlockClosedForm::Outcome::NotCovered) {
                if (findings)
                    findings->push_back({"UnclassifiedPair", "no case formula" + position()});
                return solve_offdiag_block(zr, zs, rhs);
            }
            if (cf.outcome == BlockClosedForm::Outcome::PivotVanished) {
                if (findings)
                    findings->push_back({"UnclassifiedPair",
                                         std::string(to_string(cf.tag)) +
                                             " pivot quantity vanished" + position()});
                return solve_offdiag_block(zr, zs, rhs);
            }
            if (!cf.space.consistent) {
                AffineSolutionSpace<Mat2> sv = solve_offdiag_block(zr, zs, rhs);
                if (sv.consistent) {
                    if (findings)
                        findings->push_back({"FormulaMismatch",
                                             std::string(to_string(cf.tag)) + position()});
                    return sv;
                }
            }
            return cf.space;
        },
        findings);
}

UpperTri<QuatInt> build_quaternion(const std::vector<QuatInt>& diag,
                                   const ParamAssignment& params, const PhiBasis& basis,
                                   std::vector<BuildFinding>* findings) {
    std::vector<Mat2> bdiag;
    bdiag.reserve(diag.size());
    for (const auto& z : diag) {
        if (!(z * quat_conj(z)).is_one())
            throw std::invalid_argument("diagonal entry " + z.str() +
                                        " does not satisfy z * conj(z) = 1");
        bdiag.push_back(phi(z, basis));
    }
    UpperTri<Mat2> blocks = build_solver_block(bdiag, params, findings);
    const int n = blocks.dim();
    std::vector<QuatInt> grid;
    grid.reserve(std::size_t(n) * (n + 1) / 2);
    for (int r = 1; r <= n; ++r)
        for (int s = r; s <= n; ++s) grid.push_back(phi_inv(blocks.at(r, s), basis));
    UpperTri<QuatInt> out(n, blocks.modulus(), std::move(grid));
    if (!is_coninvolution(out))
        throw std::logic_error("quaternion build postcondition violated");
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration and sampling
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kHashAssertCap = 1'000'000;

template <typename R, typename Solve>
void enumerate_walk(int n, const Modulus& p, std::uint64_t max_matrices,
                    const std::vector<R>& diag_values, CountExpr expected, Solve&& solve,
                    const std::function<void(const UpperTri<R>&)>& sink) {
    if (!p.is_odd_prime)
        throw std::invalid_argument("enumeration requires an odd prime modulus");
    if (expected > max_matrices) throw BudgetExceeded("enumeration budget", expected);

    const std::uint32_t m = p.m;
    const bool check_injective = expected <= kHashAssertCap;
    std::unordered_set<std::string> seen;

    std::vector<std::pair<int, int>> positions;
    for (int span = 1; span < n; ++span)
        for (int r = 1; r + span <= n; ++r) positions.push_back({r, r + span});

    std::vector<R> grid(std::size_t(n) * (n + 1) / 2, RingTraits<R>::zero(m));
    std::vector<int> diag_idx(n, 0);

    auto emit = [&] {
        UpperTri<R> out(n, m, grid);
        if (check_injective) {
            auto inserted = seen.insert(key_string(out.key())).second;
            if (!inserted)
                throw std::logic_error("enumeration produced a duplicate matrix");
        }
        sink(out);
    };

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == positions.size()) {
            emit();
            return;
        }
        auto [r, s] = positions[idx];
        R rhs = RingTraits<R>::zero(m);
        for (int t = r + 1; t < s; ++t)
            rhs = rhs - grid[tri_index<R>(n, r, t)] * RingTraits<R>::conj(grid[tri_index<R>(n, t, s)]);
        AffineSolutionSpace<R> space =
            solve(grid[tri_index<R>(n, r, r)], grid[tri_index<R>(n, s, s)], rhs);
        // A dead prefix: earlier entry choices admit no value here.  Skipping
        // the branch keeps the output exactly the set of coninvolutions.
        if (!space.consistent) return;
        std::vector<std::uint32_t> coeffs(space.dim(), 0);
        while (true) {
            grid[tri_index<R>(n, r, s)] = space.at(coeffs);
            rec(idx + 1);
            std::size_t i = 0;
            while (i < coeffs.size() && ++coeffs[i] == m) coeffs[i++] = 0;
            if (i == coeffs.size()) break;
        }
    };

    std::function<void(int)> diag_rec = [&](int pos) {
        if (pos == n) {
            rec(0);
            return;
        }
        for (std::size_t i = 0; i < diag_values.size(); ++i) {
            grid[tri_index<R>(n, pos + 1, pos + 1)] = diag_values[i];
            diag_rec(pos + 1);
        }
    };

    diag_rec(0);
}

} // namespace

void enumerate_gauss(int n, const Modulus& p, std::uint64_t max_matrices,
                     const std::function<void(const UpperTri<GaussInt>&)>& sink) {
    CountExpr expected = gaussian_count(n, p, UnitMode::NormOne);
    enumerate_walk<GaussInt>(n, p, max_matrices, norm_one_set(p), expected,
                             [](const GaussInt& zr, const GaussInt& zs, const GaussInt& rhs) {
                                 return solve_offdiag_gauss(zr, zs, rhs);
                             },
                             sink);
}

void enumerate_block(int n, const Modulus& p, std::uint64_t max_matrices,
                     const std::function<void(const UpperTri<Mat2>&)>& sink) {
    CountExpr expected = quat_count_partition(n, sl2_order(p), p);
    enumerate_walk<Mat2>(n, p, max_matrices, sl2_set(p), expected,
                         [](const Mat2& zr, const Mat2& zs, const Mat2& rhs) {
                             return solve_offdiag_block(zr, zs, rhs);
                         },
                         sink);
}

void enumerate_quat(int n, const Modulus& p, std::uint64_t max_matrices,
                    const std::function<void(const UpperTri<QuatInt>&)>& sink) {
    PhiBasis basis = find_ab(p);
    enumerate_block(n, p, max_matrices, [&](const UpperTri<Mat2>& blocks) {
        std::vector<QuatInt> grid;
        grid.reserve(std::size_t(n) * (n + 1) / 2);
        for (int r = 1; r <= n; ++r)
            for (int s = r; s <= n; ++s) grid.push_back(phi_inv(blocks.at(r, s), basis));
        sink(UpperTri<QuatInt>(n, p.m, std::move(grid)));
    });
}

namespace {

// Uniform diagonal, uniform coefficients at each entry; a walk whose prefix
// admits no completion is rejected and redrawn.  Completable paths are
// equiprobable, so accepted matrices are uniform over all coninvolutions.
template <typename R, typename Solve>
UpperTri<R> sample_walk(int n, const Modulus& p, std::uint64_t seed,
                        const std::vector<R>& diag_values, Solve&& solve) {
    if (!p.is_odd_prime) throw std::invalid_argument("sampling requires an odd prime modulus");
    Rng rng(seed);
    const std::uint32_t m = p.m;

    for (int attempt = 0; attempt < 100000; ++attempt) {
        std::vector<R> grid(std::size_t(n) * (n + 1) / 2, RingTraits<R>::zero(m));
        for (int r = 1; r <= n; ++r)
            grid[tri_index<R>(n, r, r)] = diag_values[rng.below(diag_values.size())];

        bool dead = false;
        for (int span = 1; span < n && !dead; ++span)
            for (int r = 1; r + span <= n && !dead; ++r) {
                int s = r + span;
                R rhs = RingTraits<R>::zero(m);
                for (int t = r + 1; t < s; ++t)
                    rhs = rhs -
                          grid[tri_index<R>(n, r, t)] * RingTraits<R>::conj(grid[tri_index<R>(n, t, s)]);
                AffineSolutionSpace<R> space =
                    solve(grid[tri_index<R>(n, r, r)], grid[tri_index<R>(n, s, s)], rhs);
                if (!space.consistent) {
                    dead = true;
                    break;
                }
                std::vector<std::uint32_t> coeffs(space.dim());
                for (auto& c : coeffs) c = static_cast<std::uint32_t>(rng.below(m));
                grid[tri_index<R>(n, r, s)] = space.at(coeffs);
            }
        if (dead) continue;
        UpperTri<R> out(n, m, std::move(grid));
        if (!is_coninvolution(out))
            throw std::logic_error("sampling postcondition violated");
        return out;
    }
    throw std::runtime_error("sampling failed to find a completable path");
}

} // namespace

UpperTri<GaussInt> sample_gauss(int n, const Modulus& p, std::uint64_t seed) {
    return sample_walk<GaussInt>(n, p, seed, norm_one_set(p),
                                 [](const GaussInt& a, const GaussInt& b, const GaussInt& r) {
                                     return solve_offdiag_gauss(a, b, r);
                                 });
}

UpperTri<Mat2> sample_block(int n, const Modulus& p, std::uint64_t seed) {
    return sample_walk<Mat2>(n, p, seed, sl2_set(p),
                             [](const Mat2& a, const Mat2& b, const Mat2& r) {
                                 return solve_offdiag_block(a, b, r);
                             });
}

UpperTri<QuatInt> sample_quat(int n, const Modulus& p, std::uint64_t seed) {
    PhiBasis basis = find_ab(p);
    UpperTri<Mat2> blocks = sample_block(n, p, seed);
    std::vector<QuatInt> grid;
    grid.reserve(std::size_t(n) * (n + 1) / 2);
    for (int r = 1; r <= n; ++r)
        for (int s = r; s <= n; ++s) grid.push_back(phi_inv(blocks.at(r, s), basis));
    return UpperTri<QuatInt>(n, p.m, std::move(grid));
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

namespace {

template <typename R>
std::vector<std::string> sorted_keys(const std::vector<R>& values) {
    std::vector<std::string> keys;
    keys.reserve(values.size());
    for (const auto& v : values) {
        std::vector<std::uint32_t> comp;
        RingTraits<R>::append(v, comp);
        keys.push_back(key_string(comp));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

// Image of the entry map w -> z_rr conj(w) + w conj(z_ss), deduplicated.
template <typename R, typename Apply>
std::vector<R> consistent_rhs_set(const std::vector<R>& domain, Apply&& apply) {
    std::vector<R> out;
    std::unordered_set<std::string> seen;
    for (const auto& w : domain) {
        R v = apply(w);
        std::vector<std::uint32_t> comp;
        RingTraits<R>::append(v, comp);
        if (seen.insert(key_string(comp)).second) out.push_back(v);
    }
    return out;
}

} // namespace

GaussSweep sweep_gauss_pairs(const Modulus& p, bool exhaustive_rhs) {
    GaussSweep rep;
    std::vector<GaussInt> units = norm_one_set(p);
    std::vector<GaussInt> all = exhaustive_rhs ? gauss_all(p) : std::vector<GaussInt>{};

    for (const auto& zr : units)
        for (const auto& zs : units) {
            ++rep.pairs;
            auto hom = solve_offdiag_gauss(zr, zs, GaussInt::of(0, 0, p.m));
            if (!hom.consistent || hom.dim() != 1)
                rep.kernel_violations.push_back(zr.str() + " / " + zs.str());
            if (classify_gauss_pair(zr, zs) == GaussCase::Generic && (zr.re + zs.re).is_zero())
                rep.pivot_violations.push_back(zr.str() + " / " + zs.str());

            if (!exhaustive_rhs) continue;
            auto rhs_set = consistent_rhs_set<GaussInt>(all, [&](const GaussInt& w) {
                return zr * gauss_conj(w) + w * gauss_conj(zs);
            });
            for (const auto& rhs : rhs_set) {
                ++rep.formula_checks;
                auto sv = solve_offdiag_gauss(zr, zs, rhs);
                auto cf = closed_form_gauss(zr, zs, rhs);
                bool ok = cf.consistent && sv.consistent &&
                          sorted_keys(cf.expand_all()) == sorted_keys(sv.expand_all());
                if (!ok) {
                    ++rep.formula_mismatches;
                    if (rep.mismatch_examples.size() < 8)
                        rep.mismatch_examples.push_back(zr.str() + " / " + zs.str() +
                                                        " rhs=" + rhs.str());
                }
            }
        }
    return rep;
}

BlockSweep sweep_block_pairs(const Modulus& p, bool exhaustive_rhs) {
    BlockSweep rep;
    std::vector<Mat2> units = sl2_set(p);
    std::vector<Mat2> all = exhaustive_rhs ? mat2_all(p) : std::vector<Mat2>{};

    auto pattern = [](const Mat2& zr, const Mat2& zs) {
        std::string s;
        if (zr.m1 == zs.m1) s += "a";
        if (zr.m2 == zs.m2) s += "b";
        if (zr.m3 == zs.m3) s += "c";
        if (zr.m4 == zs.m4) s += "d";
        return s.empty() ? std::string("-") : s;
    };

    for (const auto& zr : units)
        for (const auto& zs : units) {
            ++rep.pairs;
            BlockCase tag = classify_block_pair(zr, zs);
            ++rep.case_histogram[to_string(tag)];

            auto hom = solve_offdiag_block(zr, zs, Mat2::zero(p.m));
            int expected_dim = (zr == zs) ? 3 : 1;
            if (!hom.consistent || hom.dim() != expected_dim)
                rep.dim_findings.push_back("dim " + std::to_string(hom.dim()) + " for " +
                                           zr.str() + " / " + zs.str());

            if (tag == BlockCase::Unclassified) {
                ++rep.unclassified_patterns[pattern(zr, zs)];
                if (rep.unclassified_example.empty())
                    rep.unclassified_example = zr.str() + " / " + zs.str();
            }

            if (!exhaustive_rhs) continue;
            auto rhs_set = consistent_rhs_set<Mat2>(all, [&](const Mat2& w) {
                return zr * tilde(w) + w * tilde(zs);
            });
            for (const auto& rhs : rhs_set) {
                BlockClosedForm cf = closed_form_block(zr, zs, rhs);
                if (cf.outcome == BlockClosedForm::Outcome::NotCovered) continue;
                if (cf.outcome == BlockClosedForm::Outcome::PivotVanished) {
                    ++rep.fallback_rhs_events;
                    continue;
                }
                ++rep.formula_checks;
                auto sv = solve_offdiag_block(zr, zs, rhs);
                bool ok = cf.space.consistent && sv.consistent &&
                          sorted_keys(cf.space.expand_all()) == sorted_keys(sv.expand_all());
                if (!ok) {
                    ++rep.formula_mismatches;
                    if (rep.mismatch_examples.size() < 8)
                        rep.mismatch_examples.push_back(std::string(to_string(tag)) + ": " +
                                                        zr.str() + " / " + zs.str() +
                                                        " rhs=" + rhs.str());
                }
            }
        }
    return rep;
}

} // namespace coninv
