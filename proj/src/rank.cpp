#include "lupoly/rank.hpp"

#include "lupoly/errors.hpp"

#include <limits>

namespace lupoly {

namespace {

template <class Matrix>
RankResult rank_impl(const Matrix& m, double rank_tol) {
    if (!(rank_tol > 0.0)) throw InvalidInput("rank tolerance must be positive");
    RankResult out;
    if (m.size() == 0) return out;
    Eigen::BDCSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    out.singular_values.assign(s.data(), s.data() + s.size());
    const double top = out.singular_values.empty() ? 0.0 : out.singular_values.front();
    if (top == 0.0) return out;
    out.threshold = rank_tol * top;
    for (double v : out.singular_values) {
        if (v > out.threshold) ++out.rank;
        if (v > out.threshold / 10.0 && v < out.threshold * 10.0) out.ill_conditioned = true;
    }
    return out;
}

} // namespace

double RankResult::gap() const {
    if (rank == 0 || static_cast<std::size_t>(rank) >= singular_values.size()) {
        return std::numeric_limits<double>::infinity();
    }
    const double dropped = singular_values[static_cast<std::size_t>(rank)];
    if (dropped == 0.0) return std::numeric_limits<double>::infinity();
    return singular_values[static_cast<std::size_t>(rank) - 1] / dropped;
}

RankResult numerical_rank(const Eigen::MatrixXd& m, double rank_tol) { return rank_impl(m, rank_tol); }

RankResult numerical_rank(const Eigen::MatrixXcd& m, double rank_tol) { return rank_impl(m, rank_tol); }

} // namespace lupoly
