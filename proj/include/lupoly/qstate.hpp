#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace lupoly {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using StateVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 12;
inline constexpr double kInputNormTolerance = 1e-9;

// Number of basis states of an L-qubit register.
constexpr std::size_t hilbert_dim(int num_qubits) { return std::size_t{1} << num_qubits; }

// Bit mask of qubit `q` (0-based) inside a basis index. Qubit 0 is the most
// significant bit, so |b_1 ... b_L> has index sum_l b_l 2^(L-l).
constexpr std::size_t qubit_mask(int num_qubits, int q) {
    return std::size_t{1} << (num_qubits - 1 - q);
}

/// Normalized L-qubit pure state.
///
/// Construction validates the length (2^L) and the norm. Inputs whose norm
/// deviates from one by more than kInputNormTolerance are rejected unless
/// `renormalize` is requested explicitly; accepted inputs are stored as given.
class PureState {
public:
    PureState(int num_qubits, StateVector amplitudes, bool renormalize = false);

    // Infers L from the vector length, which must be a power of two.
    static PureState from_vector(StateVector amplitudes, bool renormalize = false);

    int num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const StateVector& amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }
    double norm() const { return amplitudes_.norm(); }

private:
    int num_qubits_;
    StateVector amplitudes_;
};

/// One-qubit reduced density matrix.
struct DensityMatrix2 {
    Matrix2 entries;

    // Eigenvalues {p, 1-p} in increasing order, closed form.
    std::pair<double, double> eigenvalues() const;
    // Smaller eigenvalue p.
    double min_eigenvalue() const { return eigenvalues().first; }
    double purity() const;
};

/// Traceless blocks rho_l - I/2, one per qubit.
struct MomentumValue {
    std::vector<Matrix2> blocks;
};

/// Shifted spectra lambda_l = 1/2 - p_l.
struct SpectraPoint {
    std::vector<double> lambdas;

    int num_qubits() const { return static_cast<int>(lambdas.size()); }
    double operator[](std::size_t l) const { return lambdas[l]; }
};

DensityMatrix2 reduce_one_qubit(const PureState& state, int qubit);
MomentumValue momentum_map(const PureState& state);
SpectraPoint psi_map(const PureState& state);
std::vector<double> purity_invariants(const PureState& state);

// Acts with g_0 (x) g_1 (x) ... (x) g_{L-1}; every factor must be in SU(2).
PureState apply_local_unitary(const PureState& state, std::span<const Matrix2> factors);

// Haar-random state from a normalized isotropic complex Gaussian vector.
// Deterministic per seed.
PureState random_state(int num_qubits, std::uint64_t seed);
PureState random_state(int num_qubits, std::mt19937_64& rng);

// Haar-random element of SU(2).
Matrix2 random_su2(std::mt19937_64& rng);

// Applies a 2x2 matrix to one tensor slot of a raw amplitude vector.
StateVector apply_on_qubit(const StateVector& vec, int num_qubits, int qubit, const Matrix2& op);

PureState basis_state(int num_qubits, std::size_t index);
PureState ghz_state(int num_qubits);
PureState w_state(int num_qubits);

} // namespace lupoly
