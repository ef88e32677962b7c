#include "coninv/report.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "coninv/count.hpp"
#include "coninv/gauss.hpp"
#include "coninv/mat2.hpp"

namespace coninv {

const char* to_string(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Discrepancy: return "DISCREPANCY";
        case Status::Fail: return "FAIL";
    }
    return "?";
}

CountExpr PrintedCell::expand() const {
    CountExpr v = 1;
    for (auto [base, exp] : factors) v *= pow_count(base, exp);
    return v;
}

namespace {

PrintedCell cell(int p, int n, std::uint64_t plain) { return {p, n, {{plain, 1}}}; }
PrintedCell cell(int p, int n, std::vector<std::pair<std::uint64_t, int>> f) {
    return {p, n, std::move(f)};
}

} // namespace

// Reference values the published table prints for T_n over Z_m[i]; the
// power-product cells are kept in exact factored form.
const std::vector<PrintedCell>& table1_printed() {
    static const std::vector<PrintedCell> cells = {
        cell(2, 2, 8), cell(2, 3, 64), cell(2, 4, 1024), cell(2, 5, 32768),
        cell(3, 2, 192), cell(3, 3, 13824), cell(3, 4, 2985984),
        cell(3, 5, {{32768, 1}, {3, 10}}),
        cell(4, 2, 256), cell(4, 3, 32768), cell(4, 4, 16777216),
        cell(4, 5, {{32768, 1}, {4, 10}}),
        cell(5, 2, 1280), cell(5, 3, 512000), cell(5, 4, {{65536, 1}, {5, 6}}),
        cell(5, 5, {{1048576, 1}, {5, 10}}),
        cell(6, 2, 1536), cell(6, 3, 884736), cell(6, 4, {{65536, 1}, {6, 6}}),
        cell(6, 5, {{1048576, 1}, {6, 10}}),
        cell(7, 2, 4816128), cell(7, 3, 37933056), cell(7, 4, {{5308416, 1}, {7, 6}}),
        cell(7, 5, {{48, 5}, {7, 10}}),
        cell(8, 2, 8192), cell(8, 3, 16777216), cell(8, 4, {{1048576, 1}, {8, 6}}),
        cell(8, 5, {{32, 5}, {8, 10}}),
        cell(9, 2, 46656), cell(9, 3, 272097792), cell(9, 4, {{26873856, 1}, {9, 6}}),
        cell(9, 5, {{72, 5}, {9, 10}}),
        cell(10, 2, 19240), cell(10, 3, 32768000), cell(10, 4, {{1048576, 1}, {10, 6}}),
        cell(10, 5, {{32, 5}, {10, 10}}),
        cell(11, 2, 158400), cell(11, 3, {{120, 3}, {11, 3}}), cell(11, 4, {{120, 4}, {11, 6}}),
        cell(11, 5, {{120, 5}, {11, 10}}),
    };
    return cells;
}

std::optional<std::uint64_t> table1_printed_units(int p) {
    static const std::map<int, std::uint64_t> units = {
        {2, 2}, {3, 8}, {4, 8}, {5, 16}, {6, 16}, {7, 48}, {8, 32}, {9, 72}, {10, 32}, {11, 120},
    };
    auto it = units.find(p);
    if (it == units.end()) return std::nullopt;
    return it->second;
}

namespace {

// Reference values for T_n over the quaternion ring; the published numbers
// exceed 64 bits, so they are kept as decimal strings.
const std::map<std::pair<int, int>, const char*>& table2_strings() {
    static const std::map<std::pair<int, int>, const char*> m = {
        {{3, 3}, "730944"}, {{3, 4}, "1935197568"}, {{3, 5}, "96505626807936"},
        {{5, 3}, "55921200"}, {{5, 4}, "242942845440"}, {{5, 5}, "5540326592171520"},
        {{7, 3}, "1097237568"}, {{7, 4}, "10865680662144"}, {{7, 5}, "348938732224113024"},
        {{11, 3}, "63229077120"}, {{11, 4}, "2297513874543360"},
        {{11, 5}, "252342301214307575040"},
        {{13, 3}, "284363059344"}, {{13, 4}, "16960852265255808"},
        {{13, 5}, "3047262840713675665536"},
        {{17, 3}, "3184303946688"}, {{17, 4}, "423042785745341184"},
        {{17, 5}, "168892742231459264058624"},
        {{19, 3}, "8670723975360"}, {{19, 4}, "1607003347848750720"},
        {{19, 5}, "894581852305833432708480"},
        {{23, 3}, "48451556497344"}, {{23, 4}, "15918297951624613248"},
        {{23, 5}, "15699903765051877402475136"},
        {{29, 3}, "390682469205840"}, {{29, 4}, "257213522072770327680"},
        {{29, 5}, "508193153533449590679553920"},
    };
    return m;
}

} // namespace

std::optional<CountExpr> printed_value(int which, int p, int n) {
    if (which == 1) {
        for (const PrintedCell& c : table1_printed())
            if (c.p == p && c.n == n) return c.expand();
        return std::nullopt;
    }
    auto it = table2_strings().find({p, n});
    if (it == table2_strings().end()) return std::nullopt;
    return CountExpr(it->second);
}

// ---------------------------------------------------------------------------
// VerificationReport
// ---------------------------------------------------------------------------

namespace {

bool internal_source(const std::string& s) { return s != "printed-table"; }

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

void VerificationReport::finalize() {
    status = Status::Pass;
    std::map<std::string, std::vector<const ReportEntry*>> by_quantity;
    for (const auto& e : entries)
        if (e.value) by_quantity[e.quantity].push_back(&e);
    for (const auto& [q, list] : by_quantity) {
        const CountExpr* internal = nullptr;
        for (const auto* e : list) {
            if (!internal_source(e->source)) continue;
            if (internal && *internal != *e->value) {
                status = Status::Fail;
                return;
            }
            if (!internal) internal = &*e->value;
        }
        if (!internal) continue;
        for (const auto* e : list)
            if (!internal_source(e->source) && *e->value != *internal)
                status = Status::Discrepancy;
    }
}

Json VerificationReport::to_json(bool deterministic) const {
    Json j;
    j["context"] = context;
    if (!deterministic) j["context"]["timestamp"] = timestamp_utc();
    Json es = Json::array();
    for (const auto& e : entries) {
        Json je;
        je["quantity"] = e.quantity;
        je["source"] = e.source;
        if (e.value)
            je["value"] = dec(*e.value);
        else
            je["value"] = nullptr;
        if (!e.note.empty()) je["note"] = e.note;
        es.push_back(std::move(je));
    }
    j["entries"] = std::move(es);
    Json fs = Json::array();
    for (const auto& f : findings) {
        Json jf;
        jf["kind"] = f.kind;
        jf["payload"] = f.payload;
        fs.push_back(std::move(jf));
    }
    j["findings"] = std::move(fs);
    j["status"] = to_string(status);
    return j;
}

VerificationReport run_verify(RingKind ring, int n, const Modulus& p, const OracleBudget& budget) {
    VerificationReport rep;
    rep.context["ring"] = ring == RingKind::Gauss ? "gauss" : "quat";
    rep.context["n"] = n;
    rep.context["p"] = p.m;
    rep.context["odd_prime"] = p.is_odd_prime;
    rep.context["budget_candidates"] = budget.max_candidates;

    auto add = [&rep](std::string quantity, std::string source, CountExpr v) {
        rep.entries.push_back({std::move(quantity), std::move(source), std::move(v), ""});
    };
    auto skip = [&rep](std::string quantity, std::string source, const std::string& why) {
        rep.entries.push_back({std::move(quantity), std::move(source), std::nullopt,
                               "SKIPPED: " + why});
    };

    const std::string count_q = "coninvolution_count";

    if (ring == RingKind::Gauss) {
        std::uint64_t norm1 = norm_one_count(p);
        std::uint64_t units = unit_group_order(p);
        add("norm_one_size", "oracle", norm1);
        add("unit_group_size", "oracle", units);
        rep.context["definitional_divergence"] = norm1 != units;

        try {
            add(count_q, "oracle", brute_count(n, p, RingKind::Gauss, budget));
        } catch (const BudgetExceeded& e) {
            skip(count_q, "oracle", "budget (requires " + e.required.str() + ")");
        }
        if (p.is_odd_prime) {
            try {
                add(count_q, "solver", solver_count(n, p, RingKind::Gauss, budget, nullptr));
            } catch (const BudgetExceeded& e) {
                skip(count_q, "solver", "budget (requires " + e.required.str() + ")");
            }
            add(count_q, "formula", gaussian_count(n, p, UnitMode::NormOne));
            add("coninvolution_count_units_reading", "formula",
                gaussian_count(n, p, UnitMode::FullUnits));
        } else {
            skip(count_q, "solver", "modulus is not an odd prime (oracle-only mode)");
            add("coninvolution_count_units_reading", "formula",
                gaussian_count(n, p, UnitMode::FullUnits));
        }
        if (auto printed = printed_value(1, int(p.m), n)) add(count_q, "printed-table", *printed);
    } else {
        std::uint64_t s = sl2_order(p);
        add("det_one_size", "formula", s);
        if (!p.is_odd_prime)
            throw std::invalid_argument("verify: quaternion ring requires an odd prime");

        try {
            add(count_q, "oracle", brute_count(n, p, RingKind::Block, budget));
        } catch (const BudgetExceeded& e) {
            skip(count_q, "oracle", "budget (requires " + e.required.str() + ")");
        }
        try {
            add(count_q, "solver", solver_count(n, p, RingKind::Block, budget, nullptr));
        } catch (const BudgetExceeded& e) {
            skip(count_q, "solver", "budget (requires " + e.required.str() + ")");
        }
        add(count_q, "formula-partition", quat_count_partition(n, s, p));
        try {
            add(count_q, "formula-composition", quat_count_composition(n, s, p));
        } catch (const BudgetExceeded& e) {
            skip(count_q, "formula-composition", "budget (requires " + e.required.str() + ")");
        }
        if (auto printed = printed_value(2, int(p.m), n)) add(count_q, "printed-table", *printed);

        if (p.m <= 7) {
            BlockSweep sweep = sweep_block_pairs(p, false);
            Json sj;
            sj["pairs"] = sweep.pairs;
            sj["cases"] = sweep.case_histogram;
            rep.context["case_sweep"] = sj;
            for (const auto& [pattern, cnt] : sweep.unclassified_patterns) {
                Json payload;
                payload["pattern"] = "entries " + pattern + " coincide";
                payload["pairs"] = cnt;
                payload["example"] = sweep.unclassified_example;
                rep.findings.push_back({"UnclassifiedPair", payload});
            }
            for (const auto& d : sweep.dim_findings) {
                Json payload;
                payload["detail"] = d;
                rep.findings.push_back({"Inconsistency", payload});
            }
        }
    }

    rep.finalize();

    // Printed-table divergence is a finding as well as a status downgrade.
    if (rep.status != Status::Fail) {
        const CountExpr* internal = nullptr;
        const CountExpr* printed = nullptr;
        for (const auto& e : rep.entries) {
            if (e.quantity != count_q || !e.value) continue;
            if (e.source == "printed-table")
                printed = &*e.value;
            else if (!internal)
                internal = &*e.value;
        }
        if (internal && printed && *internal != *printed) {
            Json payload;
            payload["p"] = p.m;
            payload["n"] = n;
            payload["computed"] = dec(*internal);
            payload["printed"] = dec(*printed);
            rep.findings.push_back({"TableMismatch", payload});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

std::vector<int> default_table_rows(int which) {
    if (which == 1) return {2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
    return {3, 5, 7, 11, 13, 17, 19, 23, 29};
}

std::vector<int> default_table_cols(int which) {
    if (which == 1) return {2, 3, 4, 5};
    return {3, 4, 5};
}

TableReport run_table(int which, const std::vector<int>& rows, const std::vector<int>& cols,
                      UnitMode unit_mode) {
    if (which != 1 && which != 2) throw std::invalid_argument("table: which must be 1 or 2");
    TableReport rep;
    rep.context["table"] = which;
    rep.context["ring"] = which == 1 ? "gauss" : "quat";
    if (which == 1)
        rep.context["unit_mode"] = unit_mode == UnitMode::NormOne ? "norm1" : "units";
    rep.context["rows"] = rows;
    rep.context["cols"] = cols;

    bool any_mismatch = false;
    for (int p : rows) {
        Modulus m = Modulus::of(p);
        for (int n : cols) {
            TableCell c;
            c.p = p;
            c.n = n;
            c.printed = printed_value(which, p, n);
            try {
                if (which == 1) {
                    c.value = gaussian_count(n, m, unit_mode);
                } else {
                    if (!m.is_odd_prime)
                        throw std::invalid_argument("quaternion count needs an odd prime");
                    c.value = quat_count_partition(n, sl2_order(m), m);
                    // Attach the walk-based count where the diagonal grid is
                    // small enough; it is the ground truth the formula is
                    // checked against.
                    if (pow_count(sl2_order(m), n) <= 20000) {
                        OracleBudget walk_budget;
                        c.solver = solver_count(n, m, RingKind::Block, walk_budget, nullptr);
                    }
                }
            } catch (const std::exception&) {
                c.status = "skipped";
                rep.cells.push_back(std::move(c));
                continue;
            }
            if (!c.printed)
                c.status = "unchecked";
            else if (*c.value == *c.printed)
                c.status = "match";
            else {
                c.status = "mismatch";
                any_mismatch = true;
            }
            rep.cells.push_back(std::move(c));
        }
    }
    rep.status = any_mismatch ? Status::Discrepancy : Status::Pass;
    return rep;
}

std::string TableReport::to_csv() const {
    std::string out = "p,n,value,printed,status\n";
    for (const auto& c : cells) {
        out += std::to_string(c.p) + "," + std::to_string(c.n) + ",";
        out += c.value ? dec(*c.value) : "";
        out += ",";
        out += c.printed ? dec(*c.printed) : "";
        out += "," + c.status + "\n";
    }
    return out;
}

Json TableReport::to_json(bool deterministic) const {
    Json j;
    j["context"] = context;
    if (!deterministic) j["context"]["timestamp"] = timestamp_utc();
    Json es = Json::array();
    Json fs = Json::array();
    for (const auto& c : cells) {
        Json je;
        je["p"] = c.p;
        je["n"] = c.n;
        je["value"] = c.value ? Json(dec(*c.value)) : Json(nullptr);
        je["printed"] = c.printed ? Json(dec(*c.printed)) : Json(nullptr);
        if (c.solver) je["solver"] = dec(*c.solver);
        je["status"] = c.status;
        es.push_back(std::move(je));
        if (c.status == "mismatch") {
            Json payload;
            payload["p"] = c.p;
            payload["n"] = c.n;
            payload["computed"] = dec(*c.value);
            payload["printed"] = dec(*c.printed);
            fs.push_back(Json{{"kind", "TableMismatch"}, {"payload", payload}});
        }
    }
    j["entries"] = std::move(es);
    j["findings"] = std::move(fs);
    j["status"] = to_string(status);
    return j;
}

} // namespace coninv
