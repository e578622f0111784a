#include "cover/congruence.hpp"
#include "cover/scenario.hpp"

#include <nlohmann/json.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cover;

namespace {

// Python ints are unbounded; route them through decimal strings so the
// bindings stay exact for any magnitude.
Int to_int(py::handle h) { return Int(py::str(h).cast<std::string>()); }

py::object to_py(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

std::vector<Int> to_vec(const py::sequence& seq) {
    std::vector<Int> out;
    for (py::handle h : seq) out.push_back(to_int(h));
    return out;
}

IntMatrix to_matrix(const py::sequence& rows) {
    std::vector<std::vector<Int>> r;
    for (py::handle row : rows) r.push_back(to_vec(row.cast<py::sequence>()));
    if (r.empty()) return IntMatrix(0, 0);
    return IntMatrix::from_rows(r);
}

py::list vec_to_py(const std::vector<Int>& v) {
    py::list out;
    for (const Int& x : v) out.append(to_py(x));
    return out;
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.append(vec_to_py(m.row(i)));
    return out;
}

py::object json_to_py(const nlohmann::json& j) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case nlohmann::json::value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case nlohmann::json::value_t::string:
            return py::str(j.get<std::string>());
        case nlohmann::json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case nlohmann::json::value_t::number_integer:
            return py::int_(j.get<std::int64_t>());
        case nlohmann::json::value_t::number_unsigned:
            return py::int_(j.get<std::uint64_t>());
        case nlohmann::json::value_t::number_float:
            return py::float_(j.get<double>());
        default:
            return py::none();
    }
}

}  // namespace

PYBIND11_MODULE(_abelcover, m) {
    m.doc() = "exact kernels, deck groups and extension classes of totally ramified abelian covers";

    py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
    py::register_exception<SemanticError>(m, "SemanticError", PyExc_ValueError);
    py::register_exception<RhoNotInN>(m, "RhoNotInN", PyExc_RuntimeError);
    py::register_exception<DecompositionFailure>(m, "DecompositionFailure", PyExc_RuntimeError);
    py::register_exception<InvalidHypotheses>(m, "InvalidHypotheses", PyExc_RuntimeError);

    py::class_<Scenario>(m, "Scenario", "parsed and validated scenario document");

    m.def(
        "load_scenario", [](const std::string& text) { return parse_input(text); },
        py::arg("document"), "Parse and validate a scenario JSON document.");

    m.def(
        "run",
        [](const std::string& cmd, const Scenario& sc) {
            Report rep = run_command(cmd, sc);
            return json_to_py(nlohmann::json::parse(rep.json));
        },
        py::arg("command"), py::arg("scenario"),
        "Run one command (validate, kernel, gtilde, decompose, class, icf, realize) and "
        "return the canonical report as a dict.");

    m.def("selftest", [] {
        Report rep = run_selftest();
        return json_to_py(nlohmann::json::parse(rep.json));
    });

    m.def(
        "snf",
        [](const py::sequence& rows) {
            SnfResult s = snf(to_matrix(rows));
            return py::make_tuple(matrix_to_py(s.U), matrix_to_py(s.D), matrix_to_py(s.V));
        },
        py::arg("matrix"),
        "Smith normal form: returns (U, D, V) with U*M*V = D, U and V unimodular.");

    m.def(
        "canonicalize",
        [](const py::sequence& relations, std::size_t generators) {
            CanonicalizeResult c = canonicalize(to_matrix(relations), generators);
            py::dict out;
            out["invariants"] = vec_to_py(c.group.invariants);
            out["free_rank"] = py::int_(c.group.free_rank);
            out["to_canonical"] = matrix_to_py(c.to_canonical.matrix);
            return out;
        },
        py::arg("relations"), py::arg("generators"),
        "Canonical form of the abelian group with the given relation rows.");

    m.def(
        "solve_mixed_congruences",
        [](const py::sequence& a, const py::sequence& b, const py::sequence& moduli) -> py::object {
            auto sol = solve_mixed_congruences(to_matrix(a), to_vec(b), to_vec(moduli));
            if (!sol) return py::none();
            return vec_to_py(*sol);
        },
        py::arg("matrix"), py::arg("rhs"), py::arg("moduli"),
        "Solve A x = b with per-row moduli (0 = exact); None means certified unsolvable.");

    m.def(
        "solve_lifting",
        [](const py::sequence& h, const py::sequence& a, const py::sequence& d, py::handle p,
           unsigned gamma, const py::sequence& x) {
            LemmaSystem sys;
            sys.h = to_vec(h);
            sys.a = to_matrix(a);
            sys.d = to_vec(d);
            sys.p = to_int(p);
            sys.gamma = gamma;
            sys.x = to_vec(x);
            return vec_to_py(solve_lifting(sys));
        },
        py::arg("h"), py::arg("a"), py::arg("d"), py::arg("p"), py::arg("gamma"), py::arg("x"),
        "Solve the congruence system sum_j (d_i a_ij / h_j) s_j = x_i mod p^gamma by the "
        "rank-mod-p base case and exponent lifting.");

    m.def(
        "crt_combine",
        [](const py::sequence& parts) {
            std::vector<std::pair<std::vector<Int>, Int>> in;
            for (py::handle part : parts) {
                auto tup = part.cast<py::sequence>();
                in.emplace_back(to_vec(tup[0].cast<py::sequence>()), to_int(tup[1]));
            }
            return vec_to_py(crt_combine(in));
        },
        py::arg("parts"),
        "Chinese-remainder recombination of (vector, modulus) pairs with coprime moduli.");
}
