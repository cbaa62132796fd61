#pragma once

#include "lupoly/polytope.hpp"
#include "lupoly/qstate.hpp"

#include <map>
#include <optional>
#include <span>
#include <vector>

namespace lupoly {

/// Diagonal operator X = sum_l X_l acting on qubit l, with the distinguished
/// qubit contributing -1 on |0> and +1 on |1>, every other qubit +1 on |0>
/// and -1 on |1>.
struct WallOperator {
    int num_qubits = 0;
    int distinguished = 0;        // 0-based
    std::vector<int> xi;          // wall normal, -1 at the distinguished slot, +1 elsewhere
    std::vector<int> diagonal;    // one entry per basis ket

    // eigenvalue -> multiplicity
    std::map<int, std::size_t> spectrum() const;
};

WallOperator build_wall_operator(int num_qubits, int distinguished = 0);

/// Computational kets spanning the eigenspace of eigenvalue -L + 2k.
struct WeightSubspaceBasis {
    int num_qubits = 0;
    int k = 0;
    int distinguished = 0;
    int eigenvalue = 0;
    std::vector<std::size_t> kets;
};

WeightSubspaceBasis eigenspace_basis(int num_qubits, int k, int distinguished = 0);

// Kets of D_k^n: k qubits in |0>, n - k in |1>, as n-bit indices.
std::vector<std::size_t> excitation_pattern(int num_qubits, int zeros);

// Evaluates (L - k - 1) ||vec||^2 == L - 2 for a vector inside the eigenspace
// -L + 2k. Throws InvalidInput when the vector leaves the eigenspace by more
// than 1e-10. For k = L - 1 the left side vanishes and the answer is L == 2.
bool check_wall_condition(const StateVector& vec, int num_qubits, int k, int distinguished = 0);
bool check_wall_condition(const PureState& state, int k, int distinguished = 0);

// Index of the tight wall of `alpha`, if any (smallest slack within tol).
std::optional<int> tight_wall_index(std::span<const double> alpha, double tol = 1e-9);

// Builds c_1 |1...1> + sum_{l != d} c_l |0 at d and l, 1 elsewhere> with
// |c_1|^2 = 1/2 + lambda_d and |c_l|^2 = 1/2 - lambda_l, phases taken from
// `phases` (one per qubit, slot d holds the phase of c_1). The result maps to
// `alpha` under psi_map. All lambdas must be < 1/2 and alpha must lie on wall
// `distinguished` (detected when absent).
PureState wall_state(std::span<const double> alpha, std::span<const double> phases,
                     std::optional<int> distinguished = std::nullopt, double tol = 1e-9);

/// Phase action of the maximal torus on the wall fiber coefficients.
struct TorusCertificate {
    int num_qubits = 0;
    std::vector<std::vector<int>> matrix;  // row i: phase weight of c_i per torus angle
    int rank = 0;
    int quotient_rank = 0;  // rank modulo the global phase direction
    bool transitive = false;
};

TorusCertificate torus_transitivity_check(int num_qubits);

} // namespace lupoly
