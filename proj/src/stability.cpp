#include "lupoly/stability.hpp"

#include "lupoly/errors.hpp"

#include <cmath>

namespace lupoly {

namespace {

const Complex kI{0.0, 1.0};

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

StateVector project_off(const StateVector& v, const StateVector& phi) {
    return v - phi.dot(v) * phi;  // Eigen's dot conjugates the left operand
}

} // namespace

GeneratorSet generator_set(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InvalidInput("generator_set: L must be in 1.." + std::to_string(kMaxQubits));
    }
    Matrix2 e12;
    e12 << 0.0, 1.0, 0.0, 0.0;
    Matrix2 e21;
    e21 << 0.0, 0.0, 1.0, 0.0;

    GeneratorSet set;
    set.num_qubits = num_qubits;
    for (int k = 0; k < num_qubits; ++k) {
        const std::string s = std::to_string(k + 1);
        set.compact.push_back({"X_" + s, k, kI * pauli_x()});
        set.compact.push_back({"Y_" + s, k, kI * pauli_y()});
        set.compact.push_back({"Z_" + s, k, kI * pauli_z()});
        set.complexified.push_back({"E12_" + s, k, e12});
        set.complexified.push_back({"E21_" + s, k, e21});
        set.complexified.push_back({"H_" + s, k, pauli_z()});
    }
    return set;
}

double killing_inner(const Matrix2& a, const Matrix2& b) {
    return -0.5 * (a * b).trace().real();
}

OrbitReport orbit_dimensions(const PureState& state, double rank_tol, const std::vector<int>& slots) {
    const int n = state.num_qubits();
    std::vector<bool> use(static_cast<std::size_t>(n), slots.empty());
    for (int s : slots) {
        if (s < 0 || s >= n) throw InvalidInput("orbit_dimensions: slot out of range");
        use[static_cast<std::size_t>(s)] = true;
    }
    const auto gens = generator_set(n);
    const StateVector& phi = state.amplitudes();
    const auto dim = static_cast<Eigen::Index>(state.dim());

    std::vector<StateVector> k_vectors;
    std::vector<StateVector> g_vectors;
    for (const auto& g : gens.compact) {
        if (use[static_cast<std::size_t>(g.slot)]) k_vectors.push_back(project_off(g.apply(phi, n), phi));
    }
    for (const auto& g : gens.complexified) {
        if (use[static_cast<std::size_t>(g.slot)]) g_vectors.push_back(project_off(g.apply(phi, n), phi));
    }

    Eigen::MatrixXd k_real(2 * dim, static_cast<Eigen::Index>(k_vectors.size()));
    for (std::size_t c = 0; c < k_vectors.size(); ++c) {
        const auto col = static_cast<Eigen::Index>(c);
        k_real.col(col).head(dim) = k_vectors[c].real();
        k_real.col(col).tail(dim) = k_vectors[c].imag();
    }
    Eigen::MatrixXcd g_complex(dim, static_cast<Eigen::Index>(g_vectors.size()));
    for (std::size_t c = 0; c < g_vectors.size(); ++c) g_complex.col(static_cast<Eigen::Index>(c)) = g_vectors[c];

    OrbitReport report;
    report.k_rank = numerical_rank(k_real, rank_tol);
    report.g_rank = numerical_rank(g_complex, rank_tol);
    report.dim_K_orbit = report.k_rank.rank;
    report.dim_G_orbit_complex = report.g_rank.rank;
    report.dim_isotropy_algebra = static_cast<int>(k_vectors.size()) - report.dim_K_orbit;
    report.ill_conditioned = report.k_rank.ill_conditioned || report.g_rank.ill_conditioned;
    return report;
}

PureState stable_state(int num_qubits, std::optional<double> alpha) {
    if (num_qubits < 4 || num_qubits > kMaxQubits) {
        throw InvalidInput("stable_state: L must be in 4.." + std::to_string(kMaxQubits));
    }
    double ghz_weight = 1.0;
    if (num_qubits == 4) {
        ghz_weight = alpha.value_or(2.0);
        if (!std::isfinite(ghz_weight)) throw InvalidInput("stable_state: alpha must be finite");
        if (ghz_weight == 1.0 || ghz_weight == -3.0) {
            throw InvalidInput("stable_state: alpha must avoid {1, -3} for L=4 (the orbit is not full there)");
        }
    } else if (alpha) {
        throw InvalidInput("stable_state: alpha applies to L=4 only");
    }

    return lemma_family_state(num_qubits, ghz_weight);
}

PureState lemma_family_state(int num_qubits, double ghz_weight) {
    if (num_qubits < 2 || num_qubits > kMaxQubits) {
        throw InvalidInput("lemma_family_state: L must be in 2.." + std::to_string(kMaxQubits));
    }
    const std::size_t dim = hilbert_dim(num_qubits);
    const std::size_t all_ones = dim - 1;
    StateVector vec = StateVector::Zero(static_cast<Eigen::Index>(dim));
    vec[0] = ghz_weight;
    vec[static_cast<Eigen::Index>(all_ones)] = ghz_weight;
    for (int l = 1; l < num_qubits; ++l) {
        const std::size_t ket = qubit_mask(num_qubits, 0) | qubit_mask(num_qubits, l);
        vec[static_cast<Eigen::Index>(ket)] += 1.0;
        vec[static_cast<Eigen::Index>(all_ones ^ ket)] += 1.0;
    }
    return PureState(num_qubits, std::move(vec), /*renormalize=*/true);
}

StabilityVerdict verify_stable(const PureState& state, int k1, double rank_tol) {
    const int n = state.num_qubits();
    if (k1 < 1 || k1 > n) throw InvalidInput("verify_stable: k1 must be in 1..L");
    StabilityVerdict verdict;
    verdict.k1 = k1;
    verdict.moment_zero = true;
    for (int q = 0; q < k1; ++q) {
        const Matrix2 block = reduce_one_qubit(state, q).entries - 0.5 * Matrix2::Identity();
        if (block.cwiseAbs().maxCoeff() > 1e-10) verdict.moment_zero = false;
    }
    std::vector<int> slots;
    for (int q = 0; q < k1; ++q) slots.push_back(q);
    verdict.subgroup = orbit_dimensions(state, rank_tol, slots);
    verdict.full = orbit_dimensions(state, rank_tol);
    verdict.stable = verdict.moment_zero && verdict.subgroup.dim_K_orbit == 3 * k1;
    return verdict;
}

} // namespace lupoly
