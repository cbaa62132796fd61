#include "lupoly/qstate.hpp"

#include "lupoly/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lupoly {

namespace {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InvalidInput("qubit count must be in 1.." + std::to_string(kMaxQubits) +
                           ", got " + std::to_string(num_qubits));
    }
}

void check_qubit_index(const PureState& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw InvalidInput("qubit index " + std::to_string(qubit) + " out of range for L=" +
                           std::to_string(state.num_qubits()));
    }
}

} // namespace

PureState::PureState(int num_qubits, StateVector amplitudes, bool renormalize)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(num_qubits_);
    if (static_cast<std::size_t>(amplitudes_.size()) != hilbert_dim(num_qubits_)) {
        throw InvalidInput("state of " + std::to_string(num_qubits_) + " qubits needs " +
                           std::to_string(hilbert_dim(num_qubits_)) + " amplitudes, got " +
                           std::to_string(amplitudes_.size()));
    }
    if (!amplitudes_.allFinite()) {
        throw InvalidInput("state amplitudes must be finite");
    }
    const double norm = amplitudes_.norm();
    if (renormalize) {
        if (norm == 0.0) throw InvalidInput("cannot renormalize the zero vector");
        amplitudes_ /= norm;
    } else if (std::abs(norm - 1.0) > kInputNormTolerance) {
        throw InvalidInput("state is not normalized (norm " + std::to_string(norm) + ")");
    }
}

PureState PureState::from_vector(StateVector amplitudes, bool renormalize) {
    const auto size = static_cast<std::size_t>(amplitudes.size());
    int num_qubits = 0;
    while (num_qubits <= kMaxQubits && hilbert_dim(num_qubits) < size) ++num_qubits;
    if (size < 2 || hilbert_dim(num_qubits) != size) {
        throw InvalidInput("amplitude count " + std::to_string(size) + " is not 2^L with L >= 1");
    }
    return PureState(num_qubits, std::move(amplitudes), renormalize);
}

std::pair<double, double> DensityMatrix2::eigenvalues() const {
    const double a = entries(0, 0).real();
    const double d = entries(1, 1).real();
    const double half_gap = 0.5 * std::sqrt((a - d) * (a - d) + 4.0 * std::norm(entries(0, 1)));
    const double mid = 0.5 * (a + d);
    return {mid - half_gap, mid + half_gap};
}

double DensityMatrix2::purity() const {
    return (entries * entries).trace().real();
}

StateVector apply_on_qubit(const StateVector& vec, int num_qubits, int qubit, const Matrix2& op) {
    const std::size_t mask = qubit_mask(num_qubits, qubit);
    StateVector out(vec.size());
    for (std::size_t i0 = 0; i0 < static_cast<std::size_t>(vec.size()); ++i0) {
        if (i0 & mask) continue;
        const std::size_t i1 = i0 | mask;
        const Complex v0 = vec[static_cast<Eigen::Index>(i0)];
        const Complex v1 = vec[static_cast<Eigen::Index>(i1)];
        out[static_cast<Eigen::Index>(i0)] = op(0, 0) * v0 + op(0, 1) * v1;
        out[static_cast<Eigen::Index>(i1)] = op(1, 0) * v0 + op(1, 1) * v1;
    }
    return out;
}

DensityMatrix2 reduce_one_qubit(const PureState& state, int qubit) {
    check_qubit_index(state, qubit);
    const std::size_t mask = qubit_mask(state.num_qubits(), qubit);
    double rho00 = 0.0;
    double rho11 = 0.0;
    Complex rho01{0.0, 0.0};
    for (std::size_t i0 = 0; i0 < state.dim(); ++i0) {
        if (i0 & mask) continue;
        const Complex a0 = state[i0];
        const Complex a1 = state[i0 | mask];
        rho00 += std::norm(a0);
        rho11 += std::norm(a1);
        rho01 += a0 * std::conj(a1);
    }
    DensityMatrix2 rho;
    rho.entries << rho00, rho01, std::conj(rho01), rho11;
    return rho;
}

MomentumValue momentum_map(const PureState& state) {
    MomentumValue mu;
    mu.blocks.reserve(static_cast<std::size_t>(state.num_qubits()));
    for (int q = 0; q < state.num_qubits(); ++q) {
        mu.blocks.push_back(reduce_one_qubit(state, q).entries - 0.5 * Matrix2::Identity());
    }
    return mu;
}

SpectraPoint psi_map(const PureState& state) {
    SpectraPoint point;
    point.lambdas.reserve(static_cast<std::size_t>(state.num_qubits()));
    for (int q = 0; q < state.num_qubits(); ++q) {
        const auto rho = reduce_one_qubit(state, q);
        // lambda = |Bloch vector| / 2, clamped against rounding at the chamber walls.
        const auto [p, upper] = rho.eigenvalues();
        const double lambda = 0.5 * (upper - p);
        point.lambdas.push_back(std::clamp(lambda, 0.0, 0.5));
    }
    return point;
}

std::vector<double> purity_invariants(const PureState& state) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(state.num_qubits()));
    for (int q = 0; q < state.num_qubits(); ++q) out.push_back(reduce_one_qubit(state, q).purity());
    return out;
}

PureState apply_local_unitary(const PureState& state, std::span<const Matrix2> factors) {
    if (static_cast<int>(factors.size()) != state.num_qubits()) {
        throw InvalidInput("expected " + std::to_string(state.num_qubits()) + " local factors, got " +
                           std::to_string(factors.size()));
    }
    StateVector vec = state.amplitudes();
    for (int q = 0; q < state.num_qubits(); ++q) {
        const Matrix2& g = factors[static_cast<std::size_t>(q)];
        const double unitarity = (g.adjoint() * g - Matrix2::Identity()).norm();
        const double det_error = std::abs(g.determinant() - Complex{1.0, 0.0});
        if (unitarity > 1e-10 || det_error > 1e-10) {
            throw InvalidInput("factor " + std::to_string(q + 1) + " is not in SU(2)");
        }
        vec = apply_on_qubit(vec, state.num_qubits(), q, g);
    }
    return PureState(state.num_qubits(), std::move(vec));
}

PureState random_state(int num_qubits, std::mt19937_64& rng) {
    check_qubit_count(num_qubits);
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector vec(static_cast<Eigen::Index>(hilbert_dim(num_qubits)));
    for (Eigen::Index i = 0; i < vec.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        vec[i] = Complex{re, im};
    }
    return PureState(num_qubits, std::move(vec), /*renormalize=*/true);
}

PureState random_state(int num_qubits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_state(num_qubits, rng);
}

Matrix2 random_su2(std::mt19937_64& rng) {
    // Uniform unit quaternion a + b i + c j + d k.
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector4d q;
    for (int i = 0; i < 4; ++i) q[i] = gauss(rng);
    q.normalize();
    Matrix2 g;
    g << Complex{q[0], q[1]}, Complex{q[2], q[3]}, Complex{-q[2], q[3]}, Complex{q[0], -q[1]};
    return g;
}

PureState basis_state(int num_qubits, std::size_t index) {
    check_qubit_count(num_qubits);
    if (index >= hilbert_dim(num_qubits)) throw InvalidInput("basis index out of range");
    StateVector vec = StateVector::Zero(static_cast<Eigen::Index>(hilbert_dim(num_qubits)));
    vec[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(num_qubits, std::move(vec));
}

PureState ghz_state(int num_qubits) {
    check_qubit_count(num_qubits);
    StateVector vec = StateVector::Zero(static_cast<Eigen::Index>(hilbert_dim(num_qubits)));
    vec[0] = 1.0;
    vec[vec.size() - 1] = 1.0;
    return PureState(num_qubits, std::move(vec), true);
}

PureState w_state(int num_qubits) {
    check_qubit_count(num_qubits);
    StateVector vec = StateVector::Zero(static_cast<Eigen::Index>(hilbert_dim(num_qubits)));
    for (int q = 0; q < num_qubits; ++q) vec[static_cast<Eigen::Index>(qubit_mask(num_qubits, q))] = 1.0;
    return PureState(num_qubits, std::move(vec), true);
}

} // namespace lupoly
