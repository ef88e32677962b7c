// coninv: construct, enumerate, sample, count, and cross-check coninvolutions
// (A * conj(A) = I) in upper-triangular matrix groups over Gaussian and
// quaternion integers mod p.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coninv/construct.hpp"
#include "coninv/count.hpp"
#include "coninv/oracle.hpp"
#include "coninv/report.hpp"

namespace {

using namespace coninv;

struct OutStream {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

int cmd_count(const std::string& ring, std::uint32_t p, int n, const std::string& unit_mode) {
    Modulus m = Modulus::of(p);
    CountExpr v;
    if (ring == "gauss") {
        UnitMode mode = unit_mode == "units" ? UnitMode::FullUnits : UnitMode::NormOne;
        v = gaussian_count(n, m, mode);
    } else {
        if (!m.is_odd_prime)
            throw std::invalid_argument("quaternion counts require an odd prime p");
        v = quat_count_partition(n, sl2_order(m), m);
    }
    std::cout << dec(v) << "\n";
    return 0;
}

int cmd_verify(const std::string& ring, std::uint32_t p, int n, std::uint64_t budget,
               const std::string& out, bool deterministic) {
    Modulus m = Modulus::of(p);
    OracleBudget ob;
    ob.max_candidates = budget;
    RingKind kind = ring == "gauss" ? RingKind::Gauss : RingKind::Block;
    VerificationReport rep = run_verify(kind, n, m, ob);
    OutStream os(out);
    os.get() << rep.to_json(deterministic).dump(2) << "\n";
    return rep.status == Status::Fail ? 1 : 0;
}

int cmd_table(int which, std::string rows_csv, std::string cols_csv,
              const std::string& unit_mode, const std::string& out, std::string json_path,
              bool deterministic) {
    auto parse_ints = [](const std::string& csv) {
        std::vector<int> out_v;
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ',')) out_v.push_back(std::stoi(item));
        return out_v;
    };
    std::vector<int> rows = rows_csv.empty() ? default_table_rows(which) : parse_ints(rows_csv);
    std::vector<int> cols = cols_csv.empty() ? default_table_cols(which) : parse_ints(cols_csv);
    UnitMode mode = unit_mode == "norm1" ? UnitMode::NormOne : UnitMode::FullUnits;

    TableReport rep = run_table(which, rows, cols, mode);
    {
        OutStream os(out);
        os.get() << rep.to_csv();
    }
    if (json_path.empty() && !out.empty()) json_path = out + ".json";
    if (!json_path.empty()) {
        std::ofstream jf(json_path);
        if (!jf) throw std::runtime_error("cannot open output file: " + json_path);
        jf << rep.to_json(deterministic).dump(2) << "\n";
    }
    return 0;
}

int cmd_enumerate(const std::string& ring, std::uint32_t p, int n, std::uint64_t budget,
                  const std::string& out) {
    Modulus m = Modulus::of(p);
    OutStream os(out);
    auto emit = [&](const auto& mat) {
        if (!is_coninvolution(mat))
            throw std::logic_error("enumeration produced a non-coninvolution");
        os.get() << matrix_json(mat, p).dump() << "\n";
    };
    if (ring == "gauss") {
        if (m.is_odd_prime) {
            enumerate_gauss(n, m, budget, emit);
        } else {
            // No constructive parametrization outside odd primes: exhaustive
            // filter within the same budget.
            OracleBudget ob;
            ob.max_candidates = budget;
            std::function<void(const std::vector<std::uint32_t>&)> sink =
                [&](const std::vector<std::uint32_t>& key) {
                    std::vector<GaussInt> grid;
                    for (std::size_t i = 0; i + 2 <= key.size(); i += 2)
                        grid.push_back(GaussInt::of(key[i], key[i + 1], p));
                    emit(UpperTri<GaussInt>(n, p, std::move(grid)));
                };
            brute_count(n, m, RingKind::Gauss, ob, &sink);
        }
    } else {
        enumerate_quat(n, m, budget, emit);
    }
    return 0;
}

int cmd_sample(const std::string& ring, std::uint32_t p, int n, std::uint64_t seed,
               std::uint64_t count, const std::string& out) {
    Modulus m = Modulus::of(p);
    OutStream os(out);
    for (std::uint64_t i = 0; i < count; ++i) {
        if (ring == "gauss") {
            auto mat = sample_gauss(n, m, seed + i);
            os.get() << matrix_json(mat, p).dump() << "\n";
        } else {
            auto mat = sample_quat(n, m, seed + i);
            os.get() << matrix_json(mat, p).dump() << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coninvolutions in upper-triangular matrix groups over Z_p[i] and Z_p[i,j,k]"};
    app.require_subcommand(1);

    std::string ring = "gauss", unit_mode, out, json_path, rows_csv, cols_csv;
    std::uint32_t p = 3;
    int n = 2, which = 1;
    std::uint64_t budget_candidates = 100'000'000;
    std::uint64_t budget_matrices = 1'000'000;
    std::uint64_t seed = 0, count = 1;
    bool deterministic = false;

    auto add_common = [&](CLI::App* sub, bool with_ring = true) {
        if (with_ring)
            sub->add_option("--ring", ring, "ring: gauss or quat")
                ->check(CLI::IsMember({"gauss", "quat"}))
                ->required();
        sub->add_option("--p", p, "modulus")->required();
        sub->add_option("--n", n, "matrix dimension")->check(CLI::Range(1, 16))->required();
    };

    CLI::App* c_count = app.add_subcommand("count", "closed-form coninvolution count");
    add_common(c_count);
    auto* um_count = c_count->add_option("--unit-mode", unit_mode,
                                         "gauss only: norm1 (default) or units")
                         ->check(CLI::IsMember({"norm1", "units"}));

    CLI::App* c_verify = app.add_subcommand("verify", "cross-check oracle, solver and formulas");
    add_common(c_verify);
    c_verify->add_option("--budget", budget_candidates, "max brute-force candidates");
    c_verify->add_option("--out", out, "write JSON report to file");
    c_verify->add_flag("--deterministic", deterministic, "omit timestamp");

    CLI::App* c_table = app.add_subcommand("table", "recompute a published table with statuses");
    c_table->add_option("--which", which, "table number: 1 (gauss) or 2 (quat)")
        ->check(CLI::IsMember({1, 2}))
        ->required();
    c_table->add_option("--rows", rows_csv, "comma-separated moduli (default: published rows)");
    c_table->add_option("--cols", cols_csv, "comma-separated n values (default: published cols)");
    auto* um_table = c_table->add_option("--unit-mode", unit_mode,
                                         "table 1 only: norm1 or units (default units)")
                         ->check(CLI::IsMember({"norm1", "units"}));
    c_table->add_option("--out", out, "write CSV to file (JSON sidecar goes to <out>.json)");
    c_table->add_option("--json", json_path, "write JSON sidecar to file");
    c_table->add_flag("--deterministic", deterministic, "omit timestamp");

    CLI::App* c_enum = app.add_subcommand("enumerate", "stream every coninvolution as JSON lines");
    add_common(c_enum);
    c_enum->add_option("--budget", budget_matrices, "max matrices to emit");
    c_enum->add_option("--out", out, "write to file");

    CLI::App* c_sample = app.add_subcommand("sample", "sample uniform coninvolutions as JSON lines");
    add_common(c_sample);
    c_sample->add_option("--seed", seed, "RNG seed (deterministic output)");
    c_sample->add_option("--count", count, "number of samples");
    c_sample->add_option("--out", out, "write to file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_count->parsed()) {
            if (ring == "quat" && um_count->count() > 0)
                throw std::invalid_argument("--unit-mode applies only to --ring gauss");
            return cmd_count(ring, p, n, unit_mode.empty() ? "norm1" : unit_mode);
        }
        if (c_verify->parsed()) return cmd_verify(ring, p, n, budget_candidates, out, deterministic);
        if (c_table->parsed()) {
            if (which == 2 && um_table->count() > 0)
                throw std::invalid_argument("--unit-mode applies only to table 1");
            return cmd_table(which, rows_csv, cols_csv, unit_mode.empty() ? "units" : unit_mode,
                             out, json_path, deterministic);
        }
        if (c_enum->parsed()) return cmd_enumerate(ring, p, n, budget_matrices, out);
        if (c_sample->parsed()) return cmd_sample(ring, p, n, seed, count, out);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
