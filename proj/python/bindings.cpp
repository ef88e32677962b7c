#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coninv/construct.hpp"
#include "coninv/count.hpp"
#include "coninv/gauss.hpp"
#include "coninv/mat2.hpp"
#include "coninv/oracle.hpp"
#include "coninv/report.hpp"

namespace py = pybind11;
using namespace coninv;

namespace {

// Counts can exceed 64 bits; hand them to python as true ints.
py::int_ to_pyint(const CountExpr& v) {
    std::string s = dec(v);
    PyObject* obj = PyLong_FromString(s.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

template <typename R>
py::dict matrix_dict(const UpperTri<R>& a, std::uint32_t p) {
    py::dict d;
    d["n"] = a.dim();
    d["ring"] = RingTraits<R>::name;
    d["p"] = p;
    py::list entries;
    for (int r = 1; r <= a.dim(); ++r)
        for (int s = r; s <= a.dim(); ++s) {
            std::vector<std::uint32_t> comp;
            RingTraits<R>::append(a.at(r, s), comp);
            py::list e;
            e.append(r);
            e.append(s);
            for (auto c : comp) e.append(c);
            entries.append(std::move(e));
        }
    d["entries"] = std::move(entries);
    return d;
}

RingKind ring_from(const std::string& ring) {
    if (ring == "gauss") return RingKind::Gauss;
    if (ring == "quat" || ring == "block") return RingKind::Block;
    throw std::invalid_argument("ring must be 'gauss' or 'quat'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coninvolutions in upper-triangular matrix groups over Z_p[i] and Z_p[i,j,k]";

    m.def(
        "count",
        [](const std::string& ring, int n, std::uint32_t p, const std::string& unit_mode) {
            Modulus mod = Modulus::of(p);
            if (ring == "gauss") {
                UnitMode um = unit_mode == "units" ? UnitMode::FullUnits : UnitMode::NormOne;
                return to_pyint(gaussian_count(n, mod, um));
            }
            if (unit_mode != "norm1")
                throw std::invalid_argument("unit_mode applies only to the gauss ring");
            return to_pyint(quat_count_partition(n, sl2_order(mod), mod));
        },
        py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("unit_mode") = "norm1",
        "Closed-form coninvolution count.");

    m.def(
        "count_composition",
        [](int n, std::uint64_t s, std::uint32_t p) {
            return to_pyint(quat_count_composition(n, s, Modulus::of(p)));
        },
        py::arg("n"), py::arg("s"), py::arg("p"),
        "Composition-sum form of the quaternion count.");

    m.def(
        "brute_count",
        [](const std::string& ring, int n, std::uint32_t p, std::uint64_t budget) {
            OracleBudget b;
            b.max_candidates = budget;
            RingKind kind = ring == "gauss" ? RingKind::Gauss
                                            : (ring == "quat" ? RingKind::QuatRaw : RingKind::Block);
            return to_pyint(brute_count(n, Modulus::of(p), kind, b));
        },
        py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("budget") = 100'000'000ull,
        "Exhaustive brute-force count (independent oracle).");

    m.def(
        "solver_count",
        [](const std::string& ring, int n, std::uint32_t p) {
            return to_pyint(solver_count(n, Modulus::of(p), ring_from(ring), OracleBudget{}));
        },
        py::arg("ring"), py::arg("n"), py::arg("p"),
        "Diagonal-walk count through the linear solver.");

    m.def(
        "enumerate",
        [](const std::string& ring, int n, std::uint32_t p, std::uint64_t budget) {
            Modulus mod = Modulus::of(p);
            py::list out;
            if (ring == "gauss")
                enumerate_gauss(n, mod, budget,
                                [&](const UpperTri<GaussInt>& a) { out.append(matrix_dict(a, p)); });
            else
                enumerate_quat(n, mod, budget,
                               [&](const UpperTri<QuatInt>& a) { out.append(matrix_dict(a, p)); });
            return out;
        },
        py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("budget") = 1'000'000ull,
        "All coninvolutions, one dict per matrix.");

    m.def(
        "sample",
        [](const std::string& ring, int n, std::uint32_t p, std::uint64_t seed) {
            Modulus mod = Modulus::of(p);
            if (ring == "gauss") return matrix_dict(sample_gauss(n, mod, seed), p);
            return matrix_dict(sample_quat(n, mod, seed), p);
        },
        py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("seed") = 0ull,
        "Uniform sample; deterministic for a fixed seed.");

    m.def(
        "verify_json",
        [](const std::string& ring, int n, std::uint32_t p, std::uint64_t budget) {
            OracleBudget b;
            b.max_candidates = budget;
            RingKind kind = ring_from(ring);
            return run_verify(kind, n, Modulus::of(p), b).to_json(true).dump(2);
        },
        py::arg("ring"), py::arg("n"), py::arg("p"), py::arg("budget") = 100'000'000ull,
        "Cross-check report (oracle vs solver vs formulas) as a JSON string.");

    m.def(
        "table_csv",
        [](int which, const std::string& unit_mode) {
            UnitMode um = unit_mode == "norm1" ? UnitMode::NormOne : UnitMode::FullUnits;
            return run_table(which, default_table_rows(which), default_table_cols(which), um)
                .to_csv();
        },
        py::arg("which"), py::arg("unit_mode") = "units",
        "Recomputed published table with per-cell match status, as CSV.");

    m.def("norm_one_count", [](std::uint32_t m) { return norm_one_count(Modulus::of(m)); },
          py::arg("m"));
    m.def("unit_group_order", [](std::uint32_t m) { return unit_group_order(Modulus::of(m)); },
          py::arg("m"));
    m.def("sl2_order", [](std::uint32_t p) { return sl2_order(Modulus::of(p)); }, py::arg("p"));
    m.def(
        "find_ab",
        [](std::uint32_t p) {
            PhiBasis b = find_ab(Modulus::of(p));
            return std::make_pair(b.a.value(), b.b.value());
        },
        py::arg("p"), "Smallest (a, b) with a^2 + b^2 = -1 mod p.");
}
