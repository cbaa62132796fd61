#include "lupoly/wall.hpp"

#include "lupoly/errors.hpp"
#include "lupoly/rational.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace lupoly {

namespace {

void check_wall_args(int num_qubits, int distinguished) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw InvalidInput("wall operator: L must be in 1.." + std::to_string(kMaxQubits));
    }
    if (distinguished < 0 || distinguished >= num_qubits) {
        throw InvalidInput("wall operator: distinguished index out of range");
    }
}

// Number of +1 contributions of ket `index` to X.
int positive_count(std::size_t index, int num_qubits, int distinguished) {
    int count = 0;
    for (int q = 0; q < num_qubits; ++q) {
        const bool one = index & qubit_mask(num_qubits, q);
        count += (q == distinguished) ? one : !one;
    }
    return count;
}

} // namespace

std::map<int, std::size_t> WallOperator::spectrum() const {
    std::map<int, std::size_t> out;
    for (int v : diagonal) ++out[v];
    return out;
}

WallOperator build_wall_operator(int num_qubits, int distinguished) {
    check_wall_args(num_qubits, distinguished);
    WallOperator x;
    x.num_qubits = num_qubits;
    x.distinguished = distinguished;
    x.xi.assign(static_cast<std::size_t>(num_qubits), 1);
    x.xi[static_cast<std::size_t>(distinguished)] = -1;
    const std::size_t dim = hilbert_dim(num_qubits);
    x.diagonal.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        int value = 0;
        for (int q = 0; q < num_qubits; ++q) {
            const int sign = (i & qubit_mask(num_qubits, q)) ? -1 : 1;
            value += sign * x.xi[static_cast<std::size_t>(q)];
        }
        x.diagonal[i] = value;
    }
    return x;
}

std::vector<std::size_t> excitation_pattern(int num_qubits, int zeros) {
    std::vector<std::size_t> out;
    if (zeros < 0 || zeros > num_qubits) return out;
    for (std::size_t i = 0; i < hilbert_dim(num_qubits); ++i) {
        if (num_qubits - std::popcount(i) == zeros) out.push_back(i);
    }
    return out;
}

WeightSubspaceBasis eigenspace_basis(int num_qubits, int k, int distinguished) {
    check_wall_args(num_qubits, distinguished);
    if (k < 0 || k > num_qubits) throw InvalidInput("eigenspace index k must be in 0..L");
    WeightSubspaceBasis basis;
    basis.num_qubits = num_qubits;
    basis.k = k;
    basis.distinguished = distinguished;
    basis.eigenvalue = -num_qubits + 2 * k;
    for (std::size_t i = 0; i < hilbert_dim(num_qubits); ++i) {
        if (positive_count(i, num_qubits, distinguished) == k) basis.kets.push_back(i);
    }
    return basis;
}

bool check_wall_condition(const StateVector& vec, int num_qubits, int k, int distinguished) {
    const auto basis = eigenspace_basis(num_qubits, k, distinguished);
    if (static_cast<std::size_t>(vec.size()) != hilbert_dim(num_qubits)) {
        throw InvalidInput("vector length does not match L");
    }
    std::vector<bool> inside(hilbert_dim(num_qubits), false);
    for (auto i : basis.kets) inside[i] = true;
    double outside = 0.0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        if (!inside[i]) outside += std::norm(vec[static_cast<Eigen::Index>(i)]);
    }
    if (std::sqrt(outside) > 1e-10) {
        throw InvalidInput("vector is not in the eigenspace -L+2k for k=" + std::to_string(k));
    }
    const double lhs = static_cast<double>(num_qubits - k - 1) * vec.squaredNorm();
    return std::abs(lhs - static_cast<double>(num_qubits - 2)) <= 1e-9;
}

bool check_wall_condition(const PureState& state, int k, int distinguished) {
    return check_wall_condition(state.amplitudes(), state.num_qubits(), k, distinguished);
}

std::optional<int> tight_wall_index(std::span<const double> alpha, double tol) {
    const PolytopeModel model(static_cast<int>(alpha.size()));
    std::optional<int> best;
    double best_slack = tol;
    for (const auto& c : model.constraints()) {
        if (c.kind != ConstraintKind::Wall) continue;
        const double s = std::abs(model.slack(c, alpha));
        if (s <= best_slack) {
            best_slack = s;
            best = c.index;
        }
    }
    return best;
}

PureState wall_state(std::span<const double> alpha, std::span<const double> phases,
                     std::optional<int> distinguished, double tol) {
    const int n = static_cast<int>(alpha.size());
    if (n < 2 || n > kMaxQubits) throw InvalidInput("wall_state: L must be in 2.." + std::to_string(kMaxQubits));
    if (phases.size() != alpha.size()) throw InvalidInput("wall_state: need one phase per qubit");
    for (double v : alpha) {
        if (!std::isfinite(v) || v < -tol) throw InvalidInput("wall_state: coordinates must be finite and >= 0");
        if (v >= 0.5) throw InvalidInput("wall_state: coordinates must be < 1/2; strip separable qubits first");
    }
    const int d = distinguished ? *distinguished : tight_wall_index(alpha, tol).value_or(-1);
    if (d < 0 || d >= n) throw InvalidInput("wall_state: point is not on a wall");
    const PolytopeModel model(n);
    if (std::abs(model.slack(Constraint{ConstraintKind::Wall, d}, alpha)) > tol) {
        throw InvalidInput("wall_state: point is not on wall " + std::to_string(d + 1));
    }

    StateVector vec = StateVector::Zero(static_cast<Eigen::Index>(hilbert_dim(n)));
    const std::size_t all_ones = hilbert_dim(n) - 1;
    for (int l = 0; l < n; ++l) {
        const double lambda = std::max(0.0, alpha[static_cast<std::size_t>(l)]);
        const double modulus_sq = (l == d) ? 0.5 + lambda : 0.5 - lambda;
        if (modulus_sq < 0.0 || modulus_sq > 1.0) throw InvalidInput("wall_state: modulus outside [0,1]");
        std::size_t ket = all_ones;
        if (l != d) ket &= ~(qubit_mask(n, d) | qubit_mask(n, l));
        vec[static_cast<Eigen::Index>(ket)] = std::polar(std::sqrt(modulus_sq), phases[static_cast<std::size_t>(l)]);
    }
    return PureState(n, std::move(vec));
}

TorusCertificate torus_transitivity_check(int num_qubits) {
    if (num_qubits < 3 || num_qubits > 64) throw InvalidInput("torus check: L must be in 3..64");
    TorusCertificate cert;
    cert.num_qubits = num_qubits;
    // Torus angle theta_j multiplies |0> on qubit j by e^{i theta_j} and |1> by e^{-i theta_j}.
    // c_1 sits on |1...1>; c_l (l >= 2) on the ket with qubits 1 and l in |0>.
    cert.matrix.assign(static_cast<std::size_t>(num_qubits), std::vector<int>(static_cast<std::size_t>(num_qubits), -1));
    for (int l = 1; l < num_qubits; ++l) {
        cert.matrix[static_cast<std::size_t>(l)][0] = 1;
        cert.matrix[static_cast<std::size_t>(l)][static_cast<std::size_t>(l)] = 1;
    }
    std::vector<std::vector<Rational>> rows;
    std::vector<std::vector<Rational>> augmented;
    for (const auto& row : cert.matrix) {
        std::vector<Rational> r(row.begin(), row.end());
        rows.push_back(r);
        r.push_back(Rational(1));
        augmented.push_back(std::move(r));
    }
    cert.rank = static_cast<int>(exact_rank(std::move(rows)));
    cert.quotient_rank = static_cast<int>(exact_rank(std::move(augmented))) - 1;
    cert.transitive = cert.quotient_rank >= num_qubits - 1;
    return cert;
}

} // namespace lupoly
