// Python bindings. Structured results are handed over as the same JSON
// documents the command-line tool prints (1-based qubit labels), converted to
// Python objects; states travel as numpy complex vectors.

#include "lupoly/cli.hpp"
#include "lupoly/dimension.hpp"
#include "lupoly/errors.hpp"
#include "lupoly/fiberlab.hpp"
#include "lupoly/json_io.hpp"
#include "lupoly/polytope.hpp"
#include "lupoly/stability.hpp"
#include "lupoly/wall.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace lupoly;

namespace {

py::object to_py(const json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

int slot(int one_based, int num_qubits, const char* what) {
    if (one_based < 1 || one_based > num_qubits) {
        throw InvalidInput(std::string(what) + " must be in 1.." + std::to_string(num_qubits));
    }
    return one_based - 1;
}

// Floats are classified with `tol`; strings ("1/6", "0.25") exactly.
StratumClass classify_any(const std::vector<std::variant<double, std::string>>& lambdas, double tol,
                          std::vector<double>& as_double) {
    bool exact = false;
    for (const auto& v : lambdas) exact |= std::holds_alternative<std::string>(v);
    as_double.clear();
    if (!exact) {
        for (const auto& v : lambdas) as_double.push_back(std::get<double>(v));
        return classify(std::span<const double>(as_double), tol);
    }
    std::vector<Rational> r;
    for (const auto& v : lambdas) {
        r.push_back(std::holds_alternative<std::string>(v) ? parse_rational(std::get<std::string>(v))
                                                           : parse_rational(std::to_string(std::get<double>(v))));
    }
    for (const auto& x : r) as_double.push_back(to_double(x));
    return classify(std::span<const Rational>(r));
}

} // namespace

PYBIND11_MODULE(_lupoly, m) {
    m.doc() = "One-qubit marginal polytope and local-unitary invariants of L-qubit pure states";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_AssertionError);

    py::class_<PureState>(m, "PureState")
        .def(py::init([](const StateVector& amplitudes, bool renormalize) {
                 return PureState::from_vector(amplitudes, renormalize);
             }),
             py::arg("amplitudes"), py::arg("renormalize") = false)
        .def_property_readonly("num_qubits", &PureState::num_qubits)
        .def_property_readonly("amplitudes", [](const PureState& s) { return s.amplitudes(); })
        .def("to_json", [](const PureState& s) { return to_py(state_to_json(s)); })
        .def_static("from_json", [](const std::string& text) { return state_from_json(json::parse(text)); })
        .def("__repr__", [](const PureState& s) { return "<PureState L=" + std::to_string(s.num_qubits()) + ">"; });

    m.def("random_state", py::overload_cast<int, std::uint64_t>(&random_state), py::arg("L"), py::arg("seed"));
    m.def("basis_state", &basis_state, py::arg("L"), py::arg("index"));
    m.def("ghz_state", &ghz_state, py::arg("L"));
    m.def("w_state", &w_state, py::arg("L"));
    m.def(
        "apply_local_unitary",
        [](const PureState& s, const std::vector<Matrix2>& g) { return apply_local_unitary(s, g); },
        py::arg("state"), py::arg("factors"));

    m.def(
        "reduced_matrix", [](const PureState& s, int q) { return reduce_one_qubit(s, slot(q, s.num_qubits(), "qubit")).entries; },
        py::arg("state"), py::arg("qubit"), "One-qubit reduced density matrix (qubit is 1-based).");
    m.def(
        "momentum_map", [](const PureState& s) { return momentum_map(s).blocks; }, py::arg("state"));
    m.def(
        "psi_map", [](const PureState& s) { return psi_map(s).lambdas; }, py::arg("state"));
    m.def("purity_invariants", &purity_invariants, py::arg("state"));

    m.def(
        "membership",
        [](const std::vector<double>& lambdas, double tol) {
            return to_py(to_json(membership(std::span<const double>(lambdas), tol), static_cast<int>(lambdas.size())));
        },
        py::arg("lambdas"), py::arg("tol") = kDefaultTolerance);
    m.def(
        "classify",
        [](const std::vector<std::variant<double, std::string>>& lambdas, double tol) {
            std::vector<double> d;
            return to_py(to_json(classify_any(lambdas, tol, d)));
        },
        py::arg("lambdas"), py::arg("tol") = kDefaultTolerance);
    m.def(
        "dim",
        [](const std::vector<std::variant<double, std::string>>& lambdas, double tol) {
            std::vector<double> d;
            const StratumClass c = classify_any(lambdas, tol, d);
            json doc = to_json(dim_reduced_space(c));
            doc["classification"] = to_json(c);
            return to_py(doc);
        },
        py::arg("lambdas"), py::arg("tol") = kDefaultTolerance,
        "Dimension of the reduced space over lambda; strings are parsed as exact fractions.");
    m.def(
        "vertices",
        [](int L, bool oracle) {
            const VertexList v = vertices(L);
            json doc = to_json(v);
            if (oracle) doc["oracle_agrees"] = same_vertex_set(v, vertices_oracle(L));
            return to_py(doc);
        },
        py::arg("L"), py::arg("oracle") = false);
    m.def(
        "facets",
        [](int L) {
            json out = json::array();
            for (const auto& f : facets(L)) out.push_back(to_json(f));
            return to_py(out);
        },
        py::arg("L"));

    m.def(
        "wall_operator", [](int L, int d) { return to_py(to_json(build_wall_operator(L, slot(d, L, "distinguished")))); },
        py::arg("L"), py::arg("distinguished") = 1);
    m.def(
        "torus_certificate", [](int L) { return to_py(to_json(torus_transitivity_check(L))); }, py::arg("L"));
    m.def(
        "wall_state",
        [](const std::vector<double>& alpha, std::optional<std::vector<double>> phases, std::optional<int> d) {
            const auto ph = phases.value_or(std::vector<double>(alpha.size(), 0.0));
            std::optional<int> zero_based;
            if (d) zero_based = slot(*d, static_cast<int>(alpha.size()), "distinguished");
            return wall_state(alpha, ph, zero_based);
        },
        py::arg("alpha"), py::arg("phases") = py::none(), py::arg("distinguished") = py::none());

    m.def("stable_state", &stable_state, py::arg("L"), py::arg("alpha") = py::none());
    m.def("lemma_family_state", &lemma_family_state, py::arg("L"), py::arg("ghz_weight"));
    m.def(
        "orbit_dimensions", [](const PureState& s, double tol) { return to_py(to_json(orbit_dimensions(s, tol))); },
        py::arg("state"), py::arg("rank_tol") = kDefaultRankTolerance);
    m.def(
        "verify_stable", [](const PureState& s, int k1, double tol) { return to_py(to_json(verify_stable(s, k1, tol))); },
        py::arg("state"), py::arg("k1"), py::arg("rank_tol") = kDefaultRankTolerance);

    m.def(
        "sample_fiber",
        [](const std::vector<double>& target, std::uint64_t seed, double tol) {
            SamplerOptions o;
            o.tol = tol;
            FiberSample s = [&] {
                py::gil_scoped_release release;
                return sample_fiber(SpectraPoint{target}, seed, o);
            }();
            return py::make_tuple(s.state, to_py(to_json(s)));
        },
        py::arg("target"), py::arg("seed") = 1, py::arg("tol") = SamplerOptions{}.tol);
    m.def(
        "rank_dmu", [](const PureState& s, double tol) { return rank_dmu(s, tol).rank; }, py::arg("state"),
        py::arg("rank_tol") = kDefaultRankTolerance);
    m.def(
        "numeric_dim",
        [](const std::vector<double>& target, int samples, std::uint64_t seed, double rank_tol) {
            NumericDimEstimate e = [&] {
                py::gil_scoped_release release;
                return numeric_dim(SpectraPoint{target}, samples, seed, {}, rank_tol);
            }();
            return to_py(to_json(e));
        },
        py::arg("target"), py::arg("samples") = 5, py::arg("seed") = 1, py::arg("rank_tol") = kDefaultRankTolerance);

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& stdin_text) {
            std::istringstream in(stdin_text);
            std::ostringstream out, err;
            const int code = cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("stdin") = "", "Run a command-line invocation in-process: (exit code, stdout, stderr).");
}
