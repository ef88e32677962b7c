#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coninv/bigint.hpp"
#include "coninv/count.hpp"
#include "coninv/modint.hpp"
#include "coninv/oracle.hpp"
#include "coninv/triangular.hpp"

namespace coninv {

using Json = nlohmann::ordered_json;

// Overall report status.  FAIL means our own sources (oracle / solver /
// formula) disagree with each other; DISCREPANCY means they agree but differ
// from a published reference value.
enum class Status { Pass, Discrepancy, Fail };
const char* to_string(Status s);

struct ReportEntry {
    std::string quantity;
    std::string source;                // oracle | solver | formula | formula-partition |
                                       // formula-composition | printed-table
    std::optional<CountExpr> value;    // absent when skipped
    std::string note;                  // e.g. "SKIPPED: budget"
};

struct ReportFinding {
    std::string kind;                  // UnclassifiedPair | FormulaMismatch | Inconsistency |
                                       // TableMismatch
    Json payload;
};

struct VerificationReport {
    Json context;
    std::vector<ReportEntry> entries;
    std::vector<ReportFinding> findings;
    Status status = Status::Pass;

    // Derives status from the entries: internal sources must agree per
    // quantity; printed-table divergence alone downgrades to DISCREPANCY.
    void finalize();
    Json to_json(bool deterministic) const;
};

VerificationReport run_verify(RingKind ring, int n, const Modulus& p, const OracleBudget& budget);

// Published reference tables.  Cell values are stored as exact product
// expressions (base^exp factors) and expanded on demand.
struct PrintedCell {
    int p = 0;
    int n = 0;
    std::vector<std::pair<std::uint64_t, int>> factors;
    CountExpr expand() const;
};

// Gaussian-ring table: rows m = 2..11, columns n = 2..5, plus the published
// unit-group column.  The quaternion-ring table (which = 2) is held as decimal
// strings since its values exceed 64 bits; use printed_value for both.
const std::vector<PrintedCell>& table1_printed();
std::optional<std::uint64_t> table1_printed_units(int p);

std::optional<CountExpr> printed_value(int which, int p, int n);

struct TableCell {
    int p = 0;
    int n = 0;
    std::optional<CountExpr> value;     // absent when not computable in this mode
    std::optional<CountExpr> printed;
    std::optional<CountExpr> solver;    // diagonal-walk count, attached when cheap (table 2)
    std::string status;                 // match | mismatch | unchecked | skipped
};

struct TableReport {
    Json context;
    std::vector<TableCell> cells;
    Status status = Status::Pass;       // Discrepancy iff any mismatch

    std::string to_csv() const;         // header: p,n,value,printed,status
    Json to_json(bool deterministic) const;
};

TableReport run_table(int which, const std::vector<int>& rows, const std::vector<int>& cols,
                      UnitMode unit_mode);

std::vector<int> default_table_rows(int which);
std::vector<int> default_table_cols(int which);

// One matrix as a JSON line for the enumerate/sample streams:
// {"n":..,"ring":..,"p":..,"entries":[[r,s,components...],...]}.
template <typename R>
Json matrix_json(const UpperTri<R>& a, std::uint32_t p) {
    Json j;
    j["n"] = a.dim();
    j["ring"] = RingTraits<R>::name;
    j["p"] = p;
    Json entries = Json::array();
    for (int r = 1; r <= a.dim(); ++r)
        for (int s = r; s <= a.dim(); ++s) {
            std::vector<std::uint32_t> comp;
            RingTraits<R>::append(a.at(r, s), comp);
            Json e = Json::array();
            e.push_back(r);
            e.push_back(s);
            for (auto c : comp) e.push_back(c);
            entries.push_back(std::move(e));
        }
    j["entries"] = std::move(entries);
    return j;
}

} // namespace coninv
