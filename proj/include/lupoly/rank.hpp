#pragma once

#include <Eigen/Dense>

#include <vector>

namespace lupoly {

inline constexpr double kDefaultRankTolerance = 1e-8;

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values;  // descending
    double threshold = 0.0;               // rank_tol * largest singular value
    bool ill_conditioned = false;         // some singular value within 10x of the threshold

    // Ratio between the last kept and first dropped singular value (infinity if none dropped).
    double gap() const;
};

// Counts singular values above rank_tol * sigma_max.
RankResult numerical_rank(const Eigen::MatrixXd& m, double rank_tol = kDefaultRankTolerance);
RankResult numerical_rank(const Eigen::MatrixXcd& m, double rank_tol = kDefaultRankTolerance);

} // namespace lupoly
