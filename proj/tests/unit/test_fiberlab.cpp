#include "lupoly/dimension.hpp"
#include "lupoly/errors.hpp"
#include "lupoly/fiberlab.hpp"
#include "lupoly/stability.hpp"

#include <doctest.h>

#include <bit>
#include <random>

using namespace lupoly;

namespace {

int closed_form(const std::vector<double>& t) { return dim_reduced_space(classify(t)).dim_M; }

void check_oracle(const std::vector<double>& t, int expected, std::uint64_t seed = 1) {
    const auto est = numeric_dim(SpectraPoint{t}, 5, seed);
    CHECK(est.status == "ok");
    CHECK(est.regular);
    REQUIRE(est.dim_estimate.has_value());
    CHECK(*est.dim_estimate == expected);
    CHECK(closed_form(t) == expected);
    for (const auto& s : est.samples) CHECK(s.residual <= SamplerOptions{}.tol);
}

std::vector<double> interior(int L, std::mt19937_64& rng) {
    for (;;) {
        const auto p = psi_map(random_state(L, rng)).lambdas;
        if (classify(p).interior()) return p;
    }
}

} // namespace

TEST_SUITE("fiberlab") {

TEST_CASE("sampler examples") {
    const auto ghz = sample_fiber(SpectraPoint{{0, 0, 0, 0}}, 3);
    CHECK(ghz.residual <= 1e-10);
    for (const auto& b : momentum_map(ghz.state).blocks) CHECK(b.cwiseAbs().maxCoeff() < 1e-9);
    const auto warm = sample_fiber(SpectraPoint{{0, 0, 0, 0}}, 3, {}, ghz_state(4));
    CHECK(warm.residual < 1e-15);

    const auto w = sample_fiber(SpectraPoint{{1.0 / 6, 1.0 / 6, 1.0 / 6}}, 5);
    CHECK(w.residual < 1e-10);
    CHECK(membership(psi_map(w.state).lambdas).member);

    CHECK_THROWS_AS(sample_fiber(SpectraPoint{{0.6, 0.1, 0.1}}, 1), InvalidInput);
}

TEST_CASE("sampler determinism") {
    const SpectraPoint t{{0.0, 0.1, 0.2, 0.15}};
    CHECK(sample_fiber(t, 42).state.amplitudes() == sample_fiber(t, 42).state.amplitudes());
    const auto a = numeric_dim(t, 3, 7);
    const auto b = numeric_dim(t, 3, 7);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].seed == b.samples[i].seed);
        CHECK(a.samples[i].residual == b.samples[i].residual);
        CHECK(a.samples[i].estimate == b.samples[i].estimate);
    }
}

TEST_CASE("sampler gives up honestly") {
    SamplerOptions tight;
    tight.max_iterations = 1;
    tight.max_restarts = 0;
    CHECK_THROWS_AS(sample_fiber(SpectraPoint{{0.0, 0.1, 0.2, 0.15}}, 1, tight), NumericalFailure);
}

TEST_CASE("rank of d(mu)") {
    std::mt19937_64 rng(12);
    const auto t = interior(3, rng);
    CHECK(rank_dmu(sample_fiber(SpectraPoint{t}, 2).state).rank == 9);
    CHECK(rank_dmu(basis_state(4, 0)).rank == 8);
    CHECK(rank_dmu(stable_state(5)).rank == 15);
}

TEST_CASE("rank duality on random states") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        const int L = 2 + i % 3;
        const PureState phi = random_state(L, rng);
        CHECK(rank_dmu(phi).rank == 3 * L - orbit_dimensions(phi).dim_isotropy_algebra);
    }
    // Also at special points.
    for (const PureState& s : {basis_state(3, 0), ghz_state(3), w_state(3), ghz_state(4), stable_state(4)}) {
        CHECK(rank_dmu(s).rank == 3 * s.num_qubits() - orbit_dimensions(s).dim_isotropy_algebra);
    }
}

TEST_CASE("oracle examples") {
    check_oracle({1.0 / 6, 1.0 / 6, 1.0 / 6}, 2);
    check_oracle({0.0, 0.1, 0.2, 0.15}, 12);
    check_oracle({0.0, 0.0, 0.0, 0.0}, 6);
    std::mt19937_64 rng(14);
    check_oracle(interior(5, rng), 42);
    check_oracle({0.0, 0.0, 0.0, 0.0, 0.0}, 32);
}

TEST_CASE("oracle matches the closed form on random interiors and every zero pattern") {
    std::mt19937_64 rng(15);
    for (int L = 3; L <= 5; ++L) {
        for (int i = 0; i < 5; ++i) {
            const auto t = interior(L, rng);
            check_oracle(t, closed_form(t), rng());
        }
    }
    std::uniform_real_distribution<double> u(0.05, 0.3);
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<double> t(4);
        for (int l = 0; l < 4; ++l) t[l] = (mask >> l & 1u) ? 0.0 : u(rng);
        check_oracle(t, 14 - 2 * std::popcount(mask), rng());
    }
}

TEST_CASE("oracle refuses singular strata") {
    CHECK_THROWS_AS(numeric_dim(SpectraPoint{{0.5, 0.1, 0.2, 0.15}}), InvalidInput);
    CHECK_THROWS_AS(numeric_dim(SpectraPoint{{1.0 / 6, 1.0 / 3, 1.0 / 3}}), InvalidInput);
    CHECK_THROWS_AS(numeric_dim(SpectraPoint{{0.1, 0.1}}), InvalidInput);
    CHECK_THROWS_AS(numeric_dim(SpectraPoint{{0.6, 0.1, 0.1}}), InvalidInput);
    CHECK_THROWS_AS(numeric_dim(SpectraPoint{{0.1, 0.1, 0.1}}, 0), InvalidInput);
}

}
