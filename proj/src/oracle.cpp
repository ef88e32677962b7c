#include "coninv/oracle.hpp"

#include <algorithm>
#include <chrono>

#include "coninv/count.hpp"
#include "coninv/linalg.hpp"

namespace coninv {

const char* to_string(RingKind r) {
    switch (r) {
        case RingKind::Gauss: return "gauss";
        case RingKind::Block: return "block";
        case RingKind::QuatRaw: return "quat";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Deadline {
    Clock::time_point start = Clock::now();
    double max_seconds;
    explicit Deadline(double s) : max_seconds(s) {}
    bool expired() const {
        return std::chrono::duration<double>(Clock::now() - start).count() > max_seconds;
    }
};

// Exhaustive filter: iterate every assignment of ring elements to the
// n(n+1)/2 upper-triangular slots.  No construction knowledge is used.
template <typename R>
CountExpr brute_filter(int n, const Modulus& m, const std::vector<R>& elements,
                       const OracleBudget& budget,
                       const std::function<void(const std::vector<std::uint32_t>&)>* key_sink) {
    const int slots = n * (n + 1) / 2;
    CountExpr candidates = pow_count(elements.size(), slots);
    if (candidates > budget.max_candidates)
        throw BudgetExceeded("brute-force candidate cap", candidates);

    Deadline deadline(budget.max_seconds);
    std::vector<std::size_t> idx(slots, 0);
    std::vector<R> grid(slots, RingTraits<R>::zero(m.m));
    for (auto& g : grid) g = elements[0];

    CountExpr hits = 0;
    std::uint64_t examined = 0;
    while (true) {
        UpperTri<R> cand(n, m.m, grid);
        if (is_coninvolution(cand)) {
            ++hits;
            if (key_sink) (*key_sink)(cand.key());
        }
        if ((++examined & 0xffff) == 0 && deadline.expired())
            throw BudgetExceeded("brute-force time cap", candidates);
        int i = 0;
        while (i < slots) {
            if (++idx[i] < elements.size()) {
                grid[i] = elements[idx[i]];
                break;
            }
            idx[i] = 0;
            grid[i] = elements[0];
            ++i;
        }
        if (i == slots) break;
    }
    return hits;
}

// Entry-by-entry walk for one diagonal tuple.  Expands every parameter path
// when full = true (verifying dimension stability and consistency at each
// reachable rhs), otherwise verifies `samples` random paths.
template <typename R, typename Solve>
CountExpr walk_one_diagonal(int n, const Modulus& p, const std::vector<R>& diag, Solve&& solve,
                            bool full, int samples, std::vector<BuildFinding>* findings) {
    std::vector<std::pair<int, int>> positions;
    for (int span = 1; span < n; ++span)
        for (int r = 1; r + span <= n; ++r) positions.push_back({r, r + span});

    auto idx = [n](int r, int s) {
        return std::size_t(r - 1) * n - std::size_t(r - 1) * (r - 2) / 2 + std::size_t(s - r);
    };
    std::vector<R> grid(std::size_t(n) * (n + 1) / 2, RingTraits<R>::zero(p.m));
    for (int r = 1; r <= n; ++r) grid[idx(r, r)] = diag[r - 1];

    std::vector<int> dims(positions.size(), -1);
    bool bad = false;

    auto space_at = [&](std::size_t i) {
        auto [r, s] = positions[i];
        R rhs = RingTraits<R>::zero(p.m);
        for (int t = r + 1; t < s; ++t)
            rhs = rhs - grid[idx(r, t)] * RingTraits<R>::conj(grid[idx(t, s)]);
        return solve(diag[r - 1], diag[s - 1], rhs);
    };

    auto note = [&](std::size_t i, const AffineSolutionSpace<R>& space) {
        if (!space.consistent) {
            if (!bad && findings && findings->size() < 100)
                findings->push_back({"Inconsistency",
                                     "diagonal walk hit an unsolvable entry at (" +
                                         std::to_string(positions[i].first) + "," +
                                         std::to_string(positions[i].second) + ")"});
            bad = true;
            return false;
        }
        if (dims[i] == -1) dims[i] = space.dim();
        if (dims[i] != space.dim()) {
            if (!bad && findings && findings->size() < 100)
                findings->push_back({"Inconsistency", "solution-space dimension varies with path"});
            bad = true;
            return false;
        }
        return true;
    };

    // Exact leaf count; inconsistent branches contribute nothing (they admit
    // no completion) and are reported as findings.
    auto count_all = [&]() {
        CountExpr leaves = 0;
        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == positions.size()) {
                ++leaves;
                return;
            }
            AffineSolutionSpace<R> space = space_at(i);
            if (!note(i, space)) return;
            std::vector<std::uint32_t> coeffs(space.dim(), 0);
            while (true) {
                grid[idx(positions[i].first, positions[i].second)] = space.at(coeffs);
                self(self, i + 1);
                std::size_t k = 0;
                while (k < coeffs.size() && ++coeffs[k] == p.m) coeffs[k++] = 0;
                if (k == coeffs.size()) break;
            }
        };
        rec(rec, 0);
        return leaves;
    };

    if (full) return count_all();

    // Sampled paths: fixed internal state keeps results reproducible.
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int t = 0; t < samples && !bad; ++t) {
        for (std::size_t i = 0; i < positions.size() && !bad; ++i) {
            AffineSolutionSpace<R> space = space_at(i);
            if (!note(i, space)) break;
            std::vector<std::uint32_t> coeffs(space.dim());
            for (auto& c : coeffs) c = static_cast<std::uint32_t>(next() % p.m);
            grid[idx(positions[i].first, positions[i].second)] = space.at(coeffs);
        }
    }
    if (bad) return count_all(); // affected diagonal contributes its true count
    CountExpr product = 1;
    for (int d : dims) product *= pow_count(p.m, d < 0 ? 0 : d);
    return product;
}

template <typename R, typename Solve>
CountExpr solver_walk(int n, const Modulus& p, const std::vector<R>& diag_values, Solve&& solve,
                      const OracleBudget& budget, std::vector<BuildFinding>* findings) {
    CountExpr tuples = pow_count(diag_values.size(), n);
    if (tuples > budget.max_candidates)
        throw BudgetExceeded("solver-walk diagonal cap", tuples);
    Deadline deadline(budget.max_seconds);

    const bool full = n <= 3;
    CountExpr total = 0;
    std::vector<std::size_t> idx(n, 0);
    std::vector<R> diag(n, diag_values[0]);
    std::uint64_t done = 0;
    while (true) {
        total += walk_one_diagonal<R>(n, p, diag, solve, full, 4, findings);
        if ((++done & 0xff) == 0 && deadline.expired())
            throw BudgetExceeded("solver-walk time cap", tuples);
        int i = 0;
        while (i < n) {
            if (++idx[i] < diag_values.size()) {
                diag[i] = diag_values[idx[i]];
                break;
            }
            idx[i] = 0;
            diag[i] = diag_values[0];
            ++i;
        }
        if (i == n) break;
    }
    return total;
}

} // namespace

CountExpr brute_count(int n, const Modulus& m, RingKind ring, const OracleBudget& budget,
                      const std::function<void(const std::vector<std::uint32_t>&)>* key_sink) {
    switch (ring) {
        case RingKind::Gauss:
            return brute_filter<GaussInt>(n, m, gauss_all(m), budget, key_sink);
        case RingKind::Block:
            return brute_filter<Mat2>(n, m, mat2_all(m), budget, key_sink);
        case RingKind::QuatRaw:
            return brute_filter<QuatInt>(n, m, quat_all(m), budget, key_sink);
    }
    throw std::logic_error("brute_count: bad ring");
}

CountExpr solver_count(int n, const Modulus& p, RingKind ring, const OracleBudget& budget,
                       std::vector<BuildFinding>* findings) {
    if (!p.is_odd_prime)
        throw std::invalid_argument("solver_count: modulus must be an odd prime");
    switch (ring) {
        case RingKind::Gauss:
            return solver_walk<GaussInt>(n, p, norm_one_set(p),
                                         [](const GaussInt& a, const GaussInt& b, const GaussInt& r) {
                                             return solve_offdiag_gauss(a, b, r);
                                         },
                                         budget, findings);
        case RingKind::Block:
            return solver_walk<Mat2>(n, p, sl2_set(p),
                                     [](const Mat2& a, const Mat2& b, const Mat2& r) {
                                         return solve_offdiag_block(a, b, r);
                                     },
                                     budget, findings);
        case RingKind::QuatRaw:
            throw std::invalid_argument("solver_count: raw quaternion walks go through the block ring");
    }
    throw std::logic_error("solver_count: bad ring");
}

namespace {

template <typename R>
std::string describe_key(const std::vector<std::uint32_t>& key, int n, std::uint32_t m) {
    std::vector<R> grid;
    const int comp = RingTraits<R>::components;
    for (std::size_t i = 0; i + comp <= key.size(); i += comp)
        grid.push_back(RingTraits<R>::from(&key[i], m));
    return UpperTri<R>(n, m, std::move(grid)).str();
}

} // namespace

SetEqualityResult set_equality(int n, const Modulus& p, RingKind ring,
                               const OracleBudget& budget) {
    std::vector<std::vector<std::uint32_t>> brute_keys;
    std::function<void(const std::vector<std::uint32_t>&)> sink =
        [&](const std::vector<std::uint32_t>& k) { brute_keys.push_back(k); };

    SetEqualityResult res;
    res.brute_size = brute_count(n, p, ring, budget, &sink);

    std::vector<std::vector<std::uint32_t>> enum_keys;
    switch (ring) {
        case RingKind::Gauss:
            enumerate_gauss(n, p, budget.max_candidates,
                            [&](const UpperTri<GaussInt>& a) { enum_keys.push_back(a.key()); });
            break;
        case RingKind::Block:
            enumerate_block(n, p, budget.max_candidates,
                            [&](const UpperTri<Mat2>& a) { enum_keys.push_back(a.key()); });
            break;
        case RingKind::QuatRaw:
            enumerate_quat(n, p, budget.max_candidates,
                           [&](const UpperTri<QuatInt>& a) { enum_keys.push_back(a.key()); });
            break;
    }
    res.enumerated_size = enum_keys.size();

    std::sort(brute_keys.begin(), brute_keys.end());
    std::sort(enum_keys.begin(), enum_keys.end());
    res.equal = brute_keys == enum_keys;
    if (!res.equal) {
        // First key on exactly one side.
        std::size_t i = 0, j = 0;
        while (i < brute_keys.size() && j < enum_keys.size() && brute_keys[i] == enum_keys[j]) {
            ++i;
            ++j;
        }
        bool from_brute = j >= enum_keys.size() ||
                          (i < brute_keys.size() && brute_keys[i] < enum_keys[j]);
        const auto& key = from_brute ? brute_keys[i] : enum_keys[j];
        std::string side = from_brute ? "only in brute-force set:\n" : "only in enumerated set:\n";
        switch (ring) {
            case RingKind::Gauss: res.witness = side + describe_key<GaussInt>(key, n, p.m); break;
            case RingKind::Block: res.witness = side + describe_key<Mat2>(key, n, p.m); break;
            case RingKind::QuatRaw: res.witness = side + describe_key<QuatInt>(key, n, p.m); break;
        }
    }
    return res;
}

} // namespace coninv
