#include "lupoly/acceptance.hpp"

#include "lupoly/dimension.hpp"
#include "lupoly/errors.hpp"
#include "lupoly/fiberlab.hpp"
#include "lupoly/polytope.hpp"
#include "lupoly/qstate.hpp"
#include "lupoly/stability.hpp"
#include "lupoly/wall.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace lupoly::acceptance {

Config Config::full() { return Config{}; }

Config Config::reduced() {
    Config c;
    c.interior_points = 2;
    c.boundary_points = 2;
    c.oracle_samples = 2;
    c.oracle_max_L = 4;
    c.vertex_oracle_max_L = 5;
    c.vertex_count_max_L = 10;
    c.wall_points = 10;
    c.property_states = 50;
    c.duality_states = 20;
    return c;
}

namespace {

using Clock = std::chrono::steady_clock;

// Runs `body` and fills timing/pass fields. Exceptions count as failures.
CriterionResult timed(int id, std::string title, double limit, const Config& config,
                      const std::function<void(std::vector<std::string>&, std::ostringstream&)>& body) {
    CriterionResult r;
    r.id = id;
    r.title = std::move(title);
    r.time_limit = limit;
    std::ostringstream summary;
    const auto start = Clock::now();
    try {
        body(r.failures, summary);
    } catch (const std::exception& e) {
        r.failures.push_back(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (config.enforce_time_limits && r.seconds > limit) {
        std::ostringstream msg;
        msg << "time limit exceeded: " << r.seconds << " s > " << limit << " s";
        r.failures.push_back(msg.str());
    }
    r.passed = r.failures.empty();
    r.summary = summary.str();
    return r;
}

std::string fmt_point(std::span<const double> v) {
    std::ostringstream s;
    s << '(';
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    s << ')';
    return s.str();
}

std::string fmt_point(std::span<const Rational> v) {
    std::ostringstream s;
    s << '(';
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << to_string(v[i]);
    s << ')';
    return s.str();
}

// Uniform rational strictly inside (lo, hi) on a grid of 1/1000 of the width.
Rational rational_between(std::mt19937_64& rng, Rational lo, Rational hi) {
    std::uniform_int_distribution<int> pick(1, 999);
    return lo + (hi - lo) * Rational(pick(rng), 1000);
}

double uniform_between(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    double x = u(rng);
    while (x <= lo) x = u(rng);
    return x;
}

std::vector<double> as_doubles(std::span<const Rational> v) {
    std::vector<double> out;
    for (const auto& r : v) out.push_back(to_double(r));
    return out;
}

// Random point of a wall (d) with all coordinates in (0, 1/2).
std::vector<Rational> exact_wall_point(std::mt19937_64& rng, int L, int d) {
    const Rational half(1, 2);
    const Rational lo(L - 2, 2 * (L - 1));
    std::vector<Rational> lambda(static_cast<std::size_t>(L));
    Rational sum = 0;
    for (int j = 0; j < L; ++j) {
        if (j == d) continue;
        lambda[static_cast<std::size_t>(j)] = rational_between(rng, lo, half);
        sum += lambda[static_cast<std::size_t>(j)];
    }
    lambda[static_cast<std::size_t>(d)] = sum - Rational(L - 2, 2);
    return lambda;
}

// Checks the exact and the floating classification give the expected dimension.
void expect_dim(std::vector<std::string>& failures, std::span<const Rational> lambda, int expected,
                const std::string& what) {
    const DimReport exact = dim_reduced_space(classify(lambda));
    const std::vector<double> approx = as_doubles(lambda);
    const DimReport floating = dim_reduced_space(classify(std::span<const double>(approx)));
    if (exact.dim_M != expected || floating.dim_M != expected) {
        std::ostringstream s;
        s << what << " " << fmt_point(lambda) << ": dim " << exact.dim_M << "/" << floating.dim_M
          << ", expected " << expected;
        failures.push_back(s.str());
    }
}

void expect_dim(std::vector<std::string>& failures, std::span<const double> lambda, int expected,
                const std::string& what) {
    const DimReport r = dim_reduced_space(classify(lambda));
    if (r.dim_M != expected) {
        std::ostringstream s;
        s << what << " " << fmt_point(lambda) << ": dim " << r.dim_M << ", expected " << expected;
        failures.push_back(s.str());
    }
}

// Psi image of a Haar-random state, redrawn until the point is interior.
std::vector<double> random_interior(std::mt19937_64& rng, int L) {
    for (;;) {
        const SpectraPoint p = psi_map(random_state(L, rng));
        if (classify(p).interior()) return p.lambdas;
    }
}

std::vector<int> random_subset(std::mt19937_64& rng, int L, int k) {
    std::vector<int> idx(static_cast<std::size_t>(L));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(static_cast<std::size_t>(k));
    std::sort(idx.begin(), idx.end());
    return idx;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace

CriterionResult criterion1(const Config& config) {
    return timed(1, "three-qubit values", 1.0, config, [&](auto& failures, auto& summary) {
        std::mt19937_64 rng(config.seed + 1);
        const int L = 3;
        const Rational half(1, 2);
        int checked = 0;

        for (int i = 0; i < config.interior_points; ++i, ++checked) {
            const std::vector<double> p = random_interior(rng, L);
            const DimReport r = dim_reduced_space(classify(std::span<const double>(p)));
            if (r.dim_M != 2 || r.num_invariants != 5) {
                failures.push_back("interior " + fmt_point(p) + ": dim " + std::to_string(r.dim_M) +
                                   ", invariants " + std::to_string(r.num_invariants));
            }
        }
        // lambda_l = 1/2 faces: the walls force the other two coordinates equal.
        for (int i = 0; i < config.boundary_points; ++i, ++checked) {
            const int l = static_cast<int>(rng() % 3);
            const Rational t = rational_between(rng, Rational(0), half);
            std::vector<Rational> p(3, t);
            p[static_cast<std::size_t>(l)] = half;
            expect_dim(failures, p, 0, "half face");
        }
        // Tight walls.
        for (int i = 0; i < config.boundary_points; ++i, ++checked) {
            const auto p = exact_wall_point(rng, L, static_cast<int>(rng() % 3));
            expect_dim(failures, p, 0, "wall");
        }
        // lambda_l = 0 faces, one or two zeros, plus the all-zero vertex.
        for (int i = 0; i < config.boundary_points; ++i, ++checked) {
            const int zeros = 1 + i % 2;
            std::vector<Rational> p(3);
            for (int l = 0; l < 3; ++l) p[static_cast<std::size_t>(l)] = rational_between(rng, Rational(0), Rational(1, 4));
            for (int z : random_subset(rng, L, zeros)) p[static_cast<std::size_t>(z)] = 0;
            expect_dim(failures, p, 0, "zero face");
        }
        expect_dim(failures, std::vector<Rational>(3, Rational(0)), 0, "GHZ vertex");
        ++checked;
        summary << checked << " points, interior dim 2 (5 invariants), boundary dim 0";
    });
}

CriterionResult criterion2(const Config& config) {
    return timed(2, "four-qubit table", 1.0, config, [&](auto& failures, auto& summary) {
        std::mt19937_64 rng(config.seed + 2);
        const int L = 4;
        const Rational half(1, 2);

        for (int i = 0; i < config.interior_points; ++i) {
            const auto p = random_interior(rng, L);
            expect_dim(failures, p, 14, "interior");
        }
        // k maximally mixed reductions, other coordinates kept small so no wall is tight.
        for (int k = 1; k <= 4; ++k) {
            for (int i = 0; i < config.boundary_points; ++i) {
                std::vector<Rational> p(4);
                for (auto& x : p) x = rational_between(rng, Rational(0), Rational(3, 10));
                for (int z : random_subset(rng, L, k)) p[static_cast<std::size_t>(z)] = 0;
                expect_dim(failures, p, 14 - 2 * k, std::to_string(k) + " zeros");
            }
        }
        for (int i = 0; i < config.boundary_points; ++i) {
            const auto p = exact_wall_point(rng, L, static_cast<int>(rng() % 4));
            expect_dim(failures, p, 0, "wall");
        }
        // lambda = 1/2 face: residual three-qubit interior gives 2, its boundary 0.
        for (int i = 0; i < config.boundary_points; ++i) {
            const int h = static_cast<int>(rng() % 4);
            const auto inner = random_interior(rng, 3);
            std::vector<double> p;
            for (int l = 0, j = 0; l < L; ++l) p.push_back(l == h ? 0.5 : inner[static_cast<std::size_t>(j++)]);
            expect_dim(failures, std::span<const double>(p), 2, "half-face interior");
        }
        for (int i = 0; i < config.boundary_points; ++i) {
            const int h = static_cast<int>(rng() % 4);
            std::vector<Rational> inner;
            switch (i % 3) {
                case 0: inner = exact_wall_point(rng, 3, static_cast<int>(rng() % 3)); break;
                case 1: {
                    inner = {Rational(0), rational_between(rng, Rational(0), Rational(1, 4)),
                             rational_between(rng, Rational(0), Rational(1, 4))};
                    break;
                }
                default: {
                    const Rational t = rational_between(rng, Rational(0), half);
                    inner = {half, t, t};
                }
            }
            std::vector<Rational> p;
            for (int l = 0, j = 0; l < L; ++l) p.push_back(l == h ? half : inner[static_cast<std::size_t>(j++)]);
            expect_dim(failures, p, 0, "half-face boundary");
        }
        summary << "interior 14; zeros 12/10/8/6; walls 0; half face 2, its boundary 0";
    });
}

CriterionResult criterion3(const Config& config) {
    return timed(3, "polytope combinatorics", 30.0, config, [&](auto& failures, auto& summary) {
        for (int L = 2; L <= config.vertex_count_max_L; ++L) {
            const auto n = vertices(L).vertices.size();
            const std::size_t expected = (std::size_t{1} << L) - static_cast<std::size_t>(L);
            if (n != expected) {
                failures.push_back("L=" + std::to_string(L) + ": " + std::to_string(n) + " vertices");
            }
        }
        for (int L = 2; L <= config.vertex_oracle_max_L; ++L) {
            if (!same_vertex_set(vertices(L), vertices_oracle(L))) {
                failures.push_back("L=" + std::to_string(L) + ": closed form differs from enumeration");
            }
        }
        // Four-qubit table: label -> coordinates (h = 1/2).
        const Rational h(1, 2), z(0);
        const std::vector<Vertex> table = {
            {"v_SEP", {h, h, h, h}}, {"v_B1", {z, z, h, h}}, {"v_B2", {z, h, z, h}},
            {"v_B3", {z, h, h, z}},  {"v_B4", {h, z, z, h}}, {"v_B5", {h, z, h, z}},
            {"v_B6", {h, h, z, z}},  {"v_4", {z, z, z, h}},  {"v_3", {z, z, h, z}},
            {"v_2", {z, h, z, z}},   {"v_1", {h, z, z, z}},  {"v_GHZ", {z, z, z, z}},
        };
        auto got = vertices(4).vertices;
        auto want = table;
        auto by_label = [](const Vertex& a, const Vertex& b) { return a.label < b.label; };
        std::sort(got.begin(), got.end(), by_label);
        std::sort(want.begin(), want.end(), by_label);
        if (got != want) failures.push_back("L=4 vertex table (labels or coordinates) differs");
        for (int L = 4; L <= 8; ++L) {
            const auto n = facets(L).size();
            if (n != static_cast<std::size_t>(3 * L)) {
                failures.push_back("L=" + std::to_string(L) + ": " + std::to_string(n) + " facets");
            }
        }
        summary << "counts L=2.." << config.vertex_count_max_L << ", enumeration L=2.."
                << config.vertex_oracle_max_L << ", L=4 table, 3L facets L=4..8";
    });
}

CriterionResult criterion4(const Config& config) {
    return timed(4, "wall-operator spectrum", 5.0, config, [&](auto& failures, auto& summary) {
        for (int L = 1; L <= 10; ++L) {
            std::map<int, std::size_t> expected;
            for (int k = 0; k <= L; ++k) expected[-L + 2 * k] = static_cast<std::size_t>(binomial(L, k));
            for (int d = 0; d < L; ++d) {
                if (build_wall_operator(L, d).spectrum() != expected) {
                    failures.push_back("L=" + std::to_string(L) + " d=" + std::to_string(d + 1) + ": spectrum");
                }
            }
            const auto basis = eigenspace_basis(L, 1);
            if (basis.eigenvalue != -L + 2 || basis.kets.size() != static_cast<std::size_t>(L)) {
                failures.push_back("L=" + std::to_string(L) + ": dim H_{-L+2} = " + std::to_string(basis.kets.size()));
            }
        }
        summary << "L=1..10, every distinguished qubit";
    });
}

CriterionResult criterion5(const Config& config) {
    return timed(5, "oracle agreement", 600.0, config, [&](auto& failures, auto& summary) {
        std::mt19937_64 rng(config.seed + 5);
        int targets = 0;
        auto check = [&](const SpectraPoint& target) {
            ++targets;
            const int closed = dim_reduced_space(classify(target)).dim_M;
            const NumericDimEstimate est = numeric_dim(target, config.oracle_samples, rng());
            if (est.status != "ok" || !est.dim_estimate || *est.dim_estimate != closed) {
                std::ostringstream s;
                s << fmt_point(target.lambdas) << ": closed form " << closed << ", oracle "
                  << (est.dim_estimate ? std::to_string(*est.dim_estimate) : std::string("none")) << " ("
                  << est.status << ")";
                failures.push_back(s.str());
            }
        };
        for (int L = 3; L <= config.oracle_max_L; ++L) {
            for (int i = 0; i < config.interior_points; ++i) check(SpectraPoint{random_interior(rng, L)});
        }
        // Every zero pattern at L = 4, the other coordinates away from walls.
        for (unsigned mask = 1; mask < 16; ++mask) {
            std::vector<double> p(4);
            for (int l = 0; l < 4; ++l) p[static_cast<std::size_t>(l)] = (mask >> l & 1U) ? 0.0 : uniform_between(rng, 0.05, 0.3);
            check(SpectraPoint{p});
        }
        summary << targets << " targets x " << config.oracle_samples << " samples";
    });
}

CriterionResult criterion6(const Config& config) {
    return timed(6, "stability family", 60.0, config, [&](auto& failures, auto& summary) {
        for (int L = 4; L <= 8; ++L) {
            const MomentumValue mu = momentum_map(stable_state(L));
            double worst = 0.0;
            for (const auto& b : mu.blocks) worst = std::max(worst, b.cwiseAbs().maxCoeff());
            if (worst > 1e-12) failures.push_back("L=" + std::to_string(L) + ": reduction off I/2 by " + std::to_string(worst));
        }
        for (int L = 4; L <= 6; ++L) {
            const OrbitReport r = orbit_dimensions(stable_state(L));
            if (r.dim_G_orbit_complex != 3 * L) {
                failures.push_back("L=" + std::to_string(L) + ": complex orbit rank " + std::to_string(r.dim_G_orbit_complex));
            }
        }
        for (double alpha : {-2.0, 0.5, 2.0, 5.0, 1.0, -3.0}) {
            const bool should_pass = alpha != 1.0 && alpha != -3.0;
            const bool passes = orbit_dimensions(lemma_family_state(4, alpha)).dim_G_orbit_complex == 12;
            if (passes != should_pass) {
                failures.push_back("alpha=" + std::to_string(alpha) + (passes ? " passes" : " fails") + " the rank test");
            }
        }
        summary << "reductions I/2 for L=4..8, rank 3L for L=4..6, alpha {-2,0.5,2,5} pass, {1,-3} fail";
    });
}

CriterionResult criterion7(const Config& config) {
    return timed(7, "wall certificate", 30.0, config, [&](auto& failures, auto& summary) {
        std::mt19937_64 rng(config.seed + 7);
        for (int L = 3; L <= 10; ++L) {
            const TorusCertificate c = torus_transitivity_check(L);
            if (c.rank != L || !c.transitive) failures.push_back("L=" + std::to_string(L) + ": torus rank " + std::to_string(c.rank));
        }
        double worst = 0.0;
        std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
        for (int L = 3; L <= 5; ++L) {
            for (int i = 0; i < config.wall_points; ++i) {
                const int d = static_cast<int>(rng() % static_cast<unsigned>(L));
                const double lo = static_cast<double>(L - 2) / (2.0 * (L - 1));
                std::vector<double> alpha(static_cast<std::size_t>(L));
                double sum = 0.0;
                for (int j = 0; j < L; ++j) {
                    if (j == d) continue;
                    alpha[static_cast<std::size_t>(j)] = uniform_between(rng, lo, 0.5);
                    sum += alpha[static_cast<std::size_t>(j)];
                }
                alpha[static_cast<std::size_t>(d)] = sum - (L - 2) / 2.0;
                std::vector<double> phases(static_cast<std::size_t>(L));
                for (auto& p : phases) p = angle(rng);
                const PureState s = wall_state(alpha, phases, d);
                const SpectraPoint got = psi_map(s);
                double err = 0.0;
                for (int l = 0; l < L; ++l) err = std::max(err, std::abs(got[static_cast<std::size_t>(l)] - alpha[static_cast<std::size_t>(l)]));
                worst = std::max(worst, err);
                if (err > 1e-10) failures.push_back("wall_state " + fmt_point(alpha) + " off by " + std::to_string(err));
                if (!check_wall_condition(s, 1, d)) failures.push_back("wall_state " + fmt_point(alpha) + " not in H_{-L+2}");
            }
        }
        summary << "torus rank L for L=3..10; " << 3 * config.wall_points << " wall states, max error " << worst;
    });
}

CriterionResult criterion8(const Config& config) {
    return timed(8, "property suites", 120.0, config, [&](auto& failures, auto& summary) {
        std::mt19937_64 rng(config.seed + 8);
        double eq_err = 0.0, psi_err = 0.0, purity_err = 0.0;
        int outside = 0;
        for (int L = 2; L <= 5; ++L) {
            for (int i = 0; i < config.property_states; ++i) {
                const PureState phi = random_state(L, rng);
                std::vector<Matrix2> g;
                for (int l = 0; l < L; ++l) g.push_back(random_su2(rng));
                const PureState moved = apply_local_unitary(phi, g);
                const MomentumValue before = momentum_map(phi);
                const MomentumValue after = momentum_map(moved);
                for (int l = 0; l < L; ++l) {
                    const auto& gl = g[static_cast<std::size_t>(l)];
                    const Matrix2 expected = gl * before.blocks[static_cast<std::size_t>(l)] * gl.adjoint();
                    eq_err = std::max(eq_err, (after.blocks[static_cast<std::size_t>(l)] - expected).cwiseAbs().maxCoeff());
                }
                const SpectraPoint p0 = psi_map(phi);
                const SpectraPoint p1 = psi_map(moved);
                for (int l = 0; l < L; ++l) {
                    const double lam = p0[static_cast<std::size_t>(l)];
                    psi_err = std::max(psi_err, std::abs(lam - p1[static_cast<std::size_t>(l)]));
                    purity_err = std::max(purity_err, std::abs(reduce_one_qubit(phi, l).purity() - (0.5 + 2.0 * lam * lam)));
                }
                if (!membership(std::span<const double>(p0.lambdas)).member) ++outside;
            }
        }
        if (eq_err > 1e-10) failures.push_back("equivariance error " + std::to_string(eq_err));
        if (psi_err > 1e-10) failures.push_back("psi invariance error " + std::to_string(psi_err));
        if (purity_err > 1e-12) failures.push_back("purity identity error " + std::to_string(purity_err));
        if (outside > 0) failures.push_back(std::to_string(outside) + " psi images outside the polytope");

        int mismatches = 0;
        for (int i = 0; i < config.duality_states; ++i) {
            const int L = 2 + i % 3;
            const PureState phi = random_state(L, rng);
            const int lhs = rank_dmu(phi).rank;
            const int rhs = 3 * L - orbit_dimensions(phi).dim_isotropy_algebra;
            if (lhs != rhs) ++mismatches;
        }
        if (mismatches > 0) failures.push_back(std::to_string(mismatches) + " rank-duality mismatches");
        summary << 4 * config.property_states << " states (errors " << eq_err << ", " << psi_err << ", " << purity_err
                << "), " << config.duality_states << " duality checks";
    });
}

std::vector<CriterionResult> run_all(const Config& config) {
    return {criterion1(config), criterion2(config), criterion3(config), criterion4(config),
            criterion5(config), criterion6(config), criterion7(config), criterion8(config)};
}

std::string format_line(const CriterionResult& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %d %s (%.3f s / %g s)", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds, r.time_limit);
    std::string line = head;
    if (!r.summary.empty()) line += " - " + r.summary;
    for (const auto& f : r.failures) line += "\n    " + f;
    return line;
}

} // namespace lupoly::acceptance
