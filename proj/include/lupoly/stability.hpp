#pragma once

#include "lupoly/qstate.hpp"
#include "lupoly/rank.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lupoly {

/// A single-slot operator 1 (x) ... (x) m (x) ... (x) 1.
struct LocalGenerator {
    std::string name;  // e.g. "X_2", "E12_1" (1-based slot)
    int slot = 0;      // 0-based
    Matrix2 matrix;

    StateVector apply(const StateVector& vec, int num_qubits) const {
        return apply_on_qubit(vec, num_qubits, slot, matrix);
    }
};

/// Bases of su(2)^L (i sigma_{x,y,z} per slot) and of sl(2,C)^L (E12, E21, H per slot).
struct GeneratorSet {
    int num_qubits = 0;
    std::vector<LocalGenerator> compact;
    std::vector<LocalGenerator> complexified;
};

GeneratorSet generator_set(int num_qubits);

// <A|B> = -1/2 tr(AB) on a single tensor factor.
double killing_inner(const Matrix2& a, const Matrix2& b);

struct OrbitReport {
    int dim_K_orbit = 0;
    int dim_G_orbit_complex = 0;
    int dim_isotropy_algebra = 0;  // 3 * (number of slots) - dim_K_orbit
    RankResult k_rank;
    RankResult g_rank;
    bool ill_conditioned = false;
};

// Orbit dimensions at [phi] under SU(2) and SL(2,C) acting on `slots`
// (all qubits when empty). Generator actions are projected onto the
// complement of phi, so a pure phase counts as isotropy.
OrbitReport orbit_dimensions(const PureState& state, double rank_tol = kDefaultRankTolerance,
                             const std::vector<int>& slots = {});

// GHZ pair plus, for each l = 2..L, the pair (1s exactly at qubits 1 and l)
// + bitwise complement. For L = 4 the GHZ pair carries weight `alpha`
// (default 2; 1 and -3 are rejected). For L >= 5 no alpha is accepted.
PureState stable_state(int num_qubits, std::optional<double> alpha = std::nullopt);

// The same family with an explicit GHZ weight and no excluded values, for
// probing the stability boundary (e.g. weight 1 or -3 at L = 4).
PureState lemma_family_state(int num_qubits, double ghz_weight);

struct StabilityVerdict {
    bool stable = false;
    bool moment_zero = false;   // first k1 reductions equal I/2 within 1e-10
    int k1 = 0;
    OrbitReport subgroup;       // generators of slots 1..k1
    OrbitReport full;           // all generators
};

StabilityVerdict verify_stable(const PureState& state, int k1, double rank_tol = kDefaultRankTolerance);

} // namespace lupoly
