#include "lupoly/json_io.hpp"

#include "lupoly/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>

namespace lupoly {

namespace {

json one_based(const std::vector<int>& indices) {
    json out = json::array();
    for (int i : indices) out.push_back(i + 1);
    return out;
}

json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

PureState state_from_json(const json& doc, bool renormalize) {
    if (!doc.is_object() || !doc.contains("L") || !doc.contains("amplitudes")) {
        throw InvalidInput("state document needs \"L\" and \"amplitudes\"");
    }
    if (!doc["L"].is_number_integer()) throw InvalidInput("\"L\" must be an integer");
    const int num_qubits = doc["L"].get<int>();
    if (num_qubits < 1 || num_qubits > kMaxQubits) throw InvalidInput("\"L\" out of range 1..12");
    const auto& amps = doc["amplitudes"];
    if (!amps.is_array()) throw InvalidInput("\"amplitudes\" must be an array");
    if (amps.size() != hilbert_dim(num_qubits)) {
        throw InvalidInput("expected " + std::to_string(hilbert_dim(num_qubits)) + " amplitudes, got " +
                           std::to_string(amps.size()));
    }
    StateVector vec(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const auto& a = amps[i];
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw InvalidInput("amplitude " + std::to_string(i) + " must be [re, im]");
        }
        vec[static_cast<Eigen::Index>(i)] = Complex{a[0].get<double>(), a[1].get<double>()};
    }
    return PureState(num_qubits, std::move(vec), renormalize);
}

json state_to_json(const PureState& state) {
    json amps = json::array();
    for (std::size_t i = 0; i < state.dim(); ++i) amps.push_back({state[i].real(), state[i].imag()});
    return {{"L", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

PureState read_state_file(const std::filesystem::path& path, bool renormalize) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open state file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw InvalidInput("state file " + path.string() + " is not valid JSON: " + e.what());
    }
    return state_from_json(doc, renormalize);
}

void write_state_file(const std::filesystem::path& path, const PureState& state) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write state file " + path.string());
    out << std::setprecision(17) << state_to_json(state).dump(2) << '\n';
}

json to_json(const Rational& value) { return {{"num", value.numerator()}, {"den", value.denominator()}}; }

json to_json(const SpectraPoint& point) {
    return {{"L", point.num_qubits()}, {"lambdas", point.lambdas}};
}

json to_json(const MembershipResult& result, int num_qubits) {
    json violated = json::array();
    for (const auto& v : result.violated) {
        violated.push_back({{"type", to_string(v.constraint.kind)},
                            {"index", v.constraint.index + 1},
                            {"constraint", v.constraint.describe(num_qubits)},
                            {"slack", v.slack}});
    }
    return {{"member", result.member}, {"violated", std::move(violated)}};
}

json to_json(const StratumClass& cls) {
    if (!cls.member) {
        MembershipResult m{false, cls.violations};
        json out = to_json(m, cls.num_qubits);
        out["L"] = cls.num_qubits;
        return out;
    }
    return {{"member", true},
            {"L", cls.num_qubits},
            {"k_half", cls.k_half},
            {"half_indices", one_based(cls.half_indices)},
            {"residual_L", cls.residual_L},
            {"residual_indices", one_based(cls.residual_indices)},
            {"degenerate", cls.degenerate},
            {"tight_walls", one_based(cls.tight_walls)},
            {"k_zero", cls.k_zero},
            {"zero_indices", one_based(cls.zero_indices)},
            {"trail", cls.trail}};
}

json to_json(const DimReport& report) {
    return {{"dim_M", report.dim_M},
            {"num_invariants", report.num_invariants},
            {"formula", to_string(report.formula)},
            {"status", to_string(report.status)},
            {"notes", report.notes}};
}

json to_json(const VertexList& list) {
    json verts = json::array();
    for (const auto& v : list.vertices) {
        json coords = json::array();
        for (const auto& x : v.lambdas) coords.push_back(to_json(x));
        verts.push_back({{"label", v.label}, {"lambdas", std::move(coords)}});
    }
    return {{"L", list.num_qubits}, {"count", list.vertices.size()}, {"vertices", std::move(verts)}};
}

json to_json(const Facet& facet) {
    return {{"type", facet.type},
            {"index", facet.constraint.index + 1},
            {"equality", facet.equality},
            {"incident_vertices", facet.incident_vertices}};
}

json to_json(const WallOperator& op) {
    json eigen = json::array();
    for (const auto& [value, mult] : op.spectrum()) eigen.push_back({{"value", value}, {"multiplicity", mult}});
    return {{"L", op.num_qubits}, {"distinguished", op.distinguished + 1}, {"xi", op.xi}, {"eigenvalues", eigen}};
}

json to_json(const TorusCertificate& cert) {
    return {{"L", cert.num_qubits},
            {"matrix", cert.matrix},
            {"rank", cert.rank},
            {"quotient_rank", cert.quotient_rank},
            {"transitive", cert.transitive}};
}

json to_json(const RankResult& rank) {
    return {{"rank", rank.rank},
            {"threshold", rank.threshold},
            {"ill_conditioned", rank.ill_conditioned},
            {"gap", finite_or_null(rank.gap())},
            {"singular_values", rank.singular_values}};
}

json to_json(const OrbitReport& report) {
    return {{"dim_K_orbit", report.dim_K_orbit},
            {"dim_G_orbit_complex", report.dim_G_orbit_complex},
            {"dim_isotropy_algebra", report.dim_isotropy_algebra},
            {"ill_conditioned", report.ill_conditioned},
            {"k_rank", to_json(report.k_rank)},
            {"g_rank", to_json(report.g_rank)}};
}

json to_json(const StabilityVerdict& verdict) {
    return {{"stable", verdict.stable},
            {"moment_zero", verdict.moment_zero},
            {"k1", verdict.k1},
            {"subgroup", to_json(verdict.subgroup)},
            {"full", to_json(verdict.full)}};
}

json to_json(const FiberSample& sample) {
    return {{"target", sample.target.lambdas},
            {"reached", psi_map(sample.state).lambdas},
            {"residual", sample.residual},
            {"iterations", sample.iterations},
            {"restarts", sample.restarts},
            {"state", state_to_json(sample.state)}};
}

json to_json(const NumericDimEstimate& estimate) {
    json samples = json::array();
    for (const auto& s : estimate.samples) {
        samples.push_back({{"seed", s.seed},
                           {"rank_dmu", s.rank_dmu},
                           {"dim_K_alpha", s.dim_K_alpha},
                           {"dim_isotropy", s.dim_isotropy},
                           {"estimate", s.estimate},
                           {"residual", s.residual},
                           {"iterations", s.iterations},
                           {"dmu_gap", finite_or_null(s.dmu_gap)},
                           {"orbit_gap", finite_or_null(s.orbit_gap)},
                           {"regular", s.regular}});
    }
    json out = {{"regular", estimate.regular},
                {"status", estimate.status},
                {"agreement", estimate.agreement},
                {"samples", std::move(samples)}};
    out["dim_estimate"] = estimate.dim_estimate ? json(*estimate.dim_estimate) : json(nullptr);
    return out;
}

} // namespace lupoly
