#pragma once

#include "lupoly/polytope.hpp"
#include "lupoly/qstate.hpp"
#include "lupoly/rank.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lupoly {

struct SamplerOptions {
    double tol = 1e-10;            // success when ||lambda(phi) - target|| <= tol
    int max_restarts = 8;
    int max_iterations = 20000;    // per descent run
    double zero_tol = kDefaultTolerance;  // target coordinates <= zero_tol are treated as 0
};

struct FiberSample {
    PureState state;
    SpectraPoint target;
    double residual = 0.0;  // Euclidean distance between psi_map(state) and target
    int iterations = 0;     // total over all runs
    int restarts = 0;
};

/// Finds a state on the psi-fiber over `target` by projected gradient descent
/// on the unit sphere, minimizing sum_l (lambda_l(phi) - target_l)^2 with a
/// Barzilai-Borwein trial step and Armijo backtracking. Fresh Haar-random
/// starts are drawn from `seed` until success or `max_restarts` is exhausted,
/// in which case NumericalFailure is thrown.
FiberSample sample_fiber(const SpectraPoint& target, std::uint64_t seed, const SamplerOptions& options = {},
                         const std::optional<PureState>& warm_start = std::nullopt);

/// Real rank of the momentum-map differential on the projective tangent
/// space at [phi], as a map into R^{3L} (Bloch-vector components per qubit).
RankResult rank_dmu(const PureState& state, double rank_tol = kDefaultRankTolerance);

struct SampleBreakdown {
    std::uint64_t seed = 0;
    int rank_dmu = 0;
    int dim_K_alpha = 0;
    int dim_isotropy = 0;
    int estimate = 0;
    double residual = 0.0;
    int iterations = 0;
    double dmu_gap = 0.0;    // singular-value gap at the rank cut of d(mu)
    double orbit_gap = 0.0;  // same for the K-orbit tangent vectors
    bool regular = false;    // rank d(mu) == 3L - dim isotropy and well conditioned
};

struct NumericDimEstimate {
    std::optional<int> dim_estimate;  // set only when every sample agrees and is regular
    bool regular = false;
    std::string status;               // "ok" or "inconclusive"
    int agreement = 0;                // samples matching the first sample's estimate
    std::vector<SampleBreakdown> samples;
};

/// Independent estimate of the reduced-space dimension over a regular-regime
/// target (no lambda = 1/2 coordinate, no tight wall):
///   (2^{L+1} - 2 - rank d(mu)) - (dim K_alpha - dim isotropy)
/// evaluated on `n_samples` fiber samples seeded seed, seed+1, ... and run
/// concurrently. Other targets are refused with InvalidInput.
NumericDimEstimate numeric_dim(const SpectraPoint& target, int n_samples = 5, std::uint64_t seed = 1,
                               const SamplerOptions& options = {},
                               double rank_tol = kDefaultRankTolerance);

} // namespace lupoly
