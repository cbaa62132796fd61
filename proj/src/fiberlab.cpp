#include "lupoly/fiberlab.hpp"

#include "lupoly/errors.hpp"
#include "lupoly/stability.hpp"

#include <cmath>
#include <future>
#include <random>

namespace lupoly {

namespace {

struct Objective {
    double value = 0.0;
    StateVector gradient;  // Euclidean gradient w.r.t. the real coordinates of phi
};

double real_dot(const StateVector& a, const StateVector& b) { return a.dot(b).real(); }

// f(phi) = sum_l (lambda_l - t_l)^2 with lambda_l = |r_l| / 2, r_l the Bloch vector of qubit l.
// For t_l = 0 the term reduces to |r_l|^2 / 4, smooth at the maximally mixed point.
Objective evaluate(const StateVector& phi, int num_qubits, const std::vector<double>& target) {
    Objective out;
    out.gradient = StateVector::Zero(phi.size());
    const PureState view(num_qubits, phi);
    for (int l = 0; l < num_qubits; ++l) {
        const Matrix2 rho = reduce_one_qubit(view, l).entries;
        const double rx = 2.0 * rho(0, 1).real();
        const double ry = -2.0 * rho(0, 1).imag();
        const double rz = (rho(0, 0) - rho(1, 1)).real();
        const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
        const double t = target[static_cast<std::size_t>(l)];
        const double diff = 0.5 * r - t;
        out.value += diff * diff;

        double weight;  // d f_l / d r_a = weight * r_a; d r_a / d phi = 2 sigma_a phi
        if (t == 0.0) {
            weight = 0.5;
        } else if (r > 1e-14) {
            weight = diff / r;
        } else {
            continue;
        }
        Matrix2 bloch;
        bloch << Complex{rz, 0.0}, Complex{rx, -ry}, Complex{rx, ry}, Complex{-rz, 0.0};
        out.gradient += (2.0 * weight) * apply_on_qubit(phi, num_qubits, l, bloch);
    }
    return out;
}

struct DescentResult {
    StateVector state;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

DescentResult descend(StateVector x, int num_qubits, const std::vector<double>& target,
                      const SamplerOptions& options) {
    const double goal = options.tol * options.tol;
    constexpr double kArmijo = 1e-4;
    DescentResult result;
    x.normalize();
    Objective obj = evaluate(x, num_qubits, target);
    StateVector grad = obj.gradient - real_dot(x, obj.gradient) * x;
    StateVector prev_x;
    StateVector prev_grad;
    double step = 0.1;
    int polish = 0;

    for (int it = 0; it < options.max_iterations; ++it) {
        result.iterations = it;
        // Past the goal, keep descending briefly so rank cuts see a cleaner point.
        if (obj.value <= goal) {
            result.converged = true;
            if (obj.value <= 1e-4 * goal || ++polish > 50) break;
        }
        if (it > 0) {
            const StateVector s = x - prev_x;
            const StateVector y = grad - prev_grad;
            const double sy = real_dot(s, y);
            if (sy > 0.0) step = std::clamp(s.squaredNorm() / sy, 1e-6, 1e3);
        }
        const double grad_sq = grad.squaredNorm();
        if (grad_sq == 0.0) break;

        bool accepted = false;
        for (int halving = 0; halving < 60; ++halving) {
            StateVector trial = (x - step * grad).normalized();
            Objective trial_obj = evaluate(trial, num_qubits, target);
            if (trial_obj.value <= obj.value - kArmijo * step * grad_sq) {
                prev_x = std::move(x);
                prev_grad = std::move(grad);
                x = std::move(trial);
                obj = std::move(trial_obj);
                grad = obj.gradient - real_dot(x, obj.gradient) * x;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    result.state = std::move(x);
    result.converged = obj.value <= goal;
    result.value = obj.value;
    return result;
}

double spectral_distance(const SpectraPoint& a, const SpectraPoint& b) {
    double sum = 0.0;
    for (std::size_t l = 0; l < a.lambdas.size(); ++l) {
        const double d = a.lambdas[l] - b.lambdas[l];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::vector<double> effective_target(const SpectraPoint& target, double zero_tol) {
    std::vector<double> t = target.lambdas;
    for (double& v : t) {
        if (v <= zero_tol) v = 0.0;
    }
    return t;
}

} // namespace

FiberSample sample_fiber(const SpectraPoint& target, std::uint64_t seed, const SamplerOptions& options,
                         const std::optional<PureState>& warm_start) {
    const int n = target.num_qubits();
    if (n < 1 || n > kMaxQubits) throw InvalidInput("sample_fiber: L must be in 1.." + std::to_string(kMaxQubits));
    if (!(options.tol > 0.0)) throw InvalidInput("sample_fiber: tolerance must be positive");
    const auto member = membership(std::span<const double>(target.lambdas), options.zero_tol);
    if (!member.member) throw InvalidInput("sample_fiber: target is outside the polytope");
    if (warm_start && warm_start->num_qubits() != n) throw InvalidInput("sample_fiber: warm start has wrong L");

    const auto goal = effective_target(target, options.zero_tol);
    std::mt19937_64 rng(seed);
    int total_iterations = 0;
    for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
        StateVector start = (attempt == 0 && warm_start) ? warm_start->amplitudes()
                                                          : random_state(n, rng).amplitudes();
        DescentResult run = descend(std::move(start), n, goal, options);
        total_iterations += run.iterations;
        if (!run.converged) continue;

        PureState state(n, std::move(run.state), /*renormalize=*/true);
        const SpectraPoint reached = psi_map(state);
        const double residual = spectral_distance(reached, SpectraPoint{goal});
        if (residual > options.tol) continue;
        if (!membership(std::span<const double>(reached.lambdas), options.zero_tol).member) continue;
        return FiberSample{std::move(state), target, residual, total_iterations, attempt};
    }
    throw NumericalFailure("sample_fiber: no convergence to tolerance " + std::to_string(options.tol) + " after " +
                           std::to_string(options.max_restarts) + " restarts");
}

RankResult rank_dmu(const PureState& state, double rank_tol) {
    const int n = state.num_qubits();
    const StateVector& phi = state.amplitudes();
    const auto dim = static_cast<Eigen::Index>(state.dim());

    // Real orthonormal frame of span{phi, i phi}; the tangent space is its complement.
    Eigen::VectorXd radial(2 * dim);
    radial << phi.real(), phi.imag();
    Eigen::VectorXd phase(2 * dim);
    phase << -phi.imag(), phi.real();

    Matrix2 sigma[3];
    sigma[0] << 0.0, 1.0, 1.0, 0.0;
    sigma[1] << 0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0;
    sigma[2] << 1.0, 0.0, 0.0, -1.0;

    Eigen::MatrixXd jac(3 * n, 2 * dim);
    for (int l = 0; l < n; ++l) {
        for (int a = 0; a < 3; ++a) {
            // d<phi|s|phi>(v) = 2 Re<s phi, v>
            const StateVector s_phi = apply_on_qubit(phi, n, l, sigma[a]);
            Eigen::VectorXd row(2 * dim);
            row << 2.0 * s_phi.real(), 2.0 * s_phi.imag();
            row -= row.dot(radial) * radial;
            row -= row.dot(phase) * phase;
            jac.row(3 * l + a) = row.transpose();
        }
    }
    return numerical_rank(jac, rank_tol);
}

NumericDimEstimate numeric_dim(const SpectraPoint& target, int n_samples, std::uint64_t seed,
                               const SamplerOptions& options, double rank_tol) {
    const int n = target.num_qubits();
    if (n_samples < 1) throw InvalidInput("numeric_dim: need at least one sample");
    if (n < 1 || n > 8) throw InvalidInput("numeric_dim: L must be in 1..8");
    const auto cls = classify(target, options.zero_tol);
    if (cls.k_half > 0 || !cls.tight_walls.empty() || cls.degenerate) {
        throw InvalidInput(
            "numeric_dim: singular value of mu - use case-specific certificate (lambda=1/2: recurse on the "
            "stripped system; tight wall: torus transitivity certificate)");
    }

    int dim_k_alpha = 0;
    for (double v : target.lambdas) dim_k_alpha += v > options.zero_tol ? 1 : 3;
    const long long tangent_dim = (1LL << (n + 1)) - 2;

    auto run_sample = [&](std::uint64_t sample_seed) {
        const FiberSample sample = sample_fiber(target, sample_seed, options);
        const RankResult dmu = rank_dmu(sample.state, rank_tol);
        const OrbitReport orbit = orbit_dimensions(sample.state, rank_tol);
        SampleBreakdown b;
        b.seed = sample_seed;
        b.rank_dmu = dmu.rank;
        b.dim_K_alpha = dim_k_alpha;
        b.dim_isotropy = orbit.dim_isotropy_algebra;
        b.estimate = static_cast<int>(tangent_dim - dmu.rank - (dim_k_alpha - orbit.dim_isotropy_algebra));
        b.residual = sample.residual;
        b.iterations = sample.iterations;
        b.dmu_gap = dmu.gap();
        b.orbit_gap = orbit.k_rank.gap();
        b.regular = dmu.rank == 3 * n - orbit.dim_isotropy_algebra && !dmu.ill_conditioned &&
                    !orbit.k_rank.ill_conditioned;
        return b;
    };

    std::vector<std::future<SampleBreakdown>> futures;
    for (int i = 0; i < n_samples; ++i) {
        futures.push_back(std::async(std::launch::async, run_sample, seed + static_cast<std::uint64_t>(i)));
    }
    NumericDimEstimate estimate;
    for (auto& f : futures) estimate.samples.push_back(f.get());

    const int first = estimate.samples.front().estimate;
    bool all_regular = true;
    for (const auto& s : estimate.samples) {
        if (s.estimate == first) ++estimate.agreement;
        all_regular = all_regular && s.regular;
    }
    estimate.regular = all_regular;
    if (all_regular && estimate.agreement == n_samples) {
        estimate.dim_estimate = first;
        estimate.status = "ok";
    } else {
        estimate.status = "inconclusive";
    }
    return estimate;
}

} // namespace lupoly
