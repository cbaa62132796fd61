#include "oracles.hpp"

#include "lupoly/errors.hpp"
#include "lupoly/polytope.hpp"
#include "lupoly/wall.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace lupoly;

namespace {

// Eigenvalue of X on ket i, written straight from the sign convention.
int x_value(std::size_t i, int L, int d) {
    int v = 0;
    for (int q = 0; q < L; ++q) {
        const bool one = (i >> (L - 1 - q)) & 1u;
        v += (q == d) ? (one ? 1 : -1) : (one ? -1 : 1);
    }
    return v;
}

StateVector random_in(const std::vector<std::size_t>& kets, int L, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    StateVector v = StateVector::Zero(std::size_t{1} << L);
    for (auto k : kets) v[static_cast<Eigen::Index>(k)] = Complex{g(rng), g(rng)};
    return v.normalized();
}

// Random point on wall d with coordinates in (0, 1/2).
std::vector<double> wall_point(int L, int d, std::mt19937_64& rng) {
    const double lo = (L - 2) / (2.0 * (L - 1));
    std::uniform_real_distribution<double> u(lo + 1e-6, 0.5 - 1e-6);
    std::vector<double> a(L);
    double sum = 0;
    for (int j = 0; j < L; ++j) {
        if (j == d) continue;
        a[j] = u(rng);
        sum += a[j];
    }
    a[d] = sum - (L - 2) / 2.0;
    return a;
}

} // namespace

TEST_SUITE("wall") {

TEST_CASE("operator examples") {
    CHECK(build_wall_operator(1, 0).diagonal == std::vector<int>{-1, 1});
    CHECK(build_wall_operator(3, 0).spectrum() == std::map<int, std::size_t>{{-3, 1}, {-1, 3}, {1, 3}, {3, 1}});
    CHECK(build_wall_operator(4, 0).spectrum() == std::map<int, std::size_t>{{-4, 1}, {-2, 4}, {0, 6}, {2, 4}, {4, 1}});
    CHECK_THROWS_AS(build_wall_operator(3, 3), InvalidInput);
    CHECK_THROWS_AS(build_wall_operator(0, 0), InvalidInput);
}

TEST_CASE("diagonal against the sign convention, multiplicities binomial") {
    for (int L = 1; L <= 10; ++L) {
        for (int d = 0; d < L; ++d) {
            const auto x = build_wall_operator(L, d);
            for (std::size_t i = 0; i < x.diagonal.size(); ++i) REQUIRE(x.diagonal[i] == x_value(i, L, d));
            std::size_t total = 0;
            for (int k = 0; k <= L; ++k) {
                const auto basis = eigenspace_basis(L, k, d);
                CHECK(basis.eigenvalue == -L + 2 * k);
                CHECK(static_cast<long long>(basis.kets.size()) == oracle::binom(L, k));
                CHECK(x.spectrum().at(-L + 2 * k) == basis.kets.size());
                total += basis.kets.size();
            }
            CHECK(total == (std::size_t{1} << L));
        }
        CHECK(eigenspace_basis(L, 1).kets.size() == static_cast<std::size_t>(L));
    }
}

TEST_CASE("eigenspace examples") {
    CHECK(eigenspace_basis(4, 1, 0).kets == std::vector<std::size_t>{0b0011, 0b0101, 0b0110, 0b1111});
    CHECK(eigenspace_basis(3, 2, 0).kets.size() == 3);
    const auto e = eigenspace_basis(2, 0, 0);
    CHECK(e.eigenvalue == -2);
    CHECK(e.kets == std::vector<std::size_t>{0b01});
    CHECK_THROWS_AS(eigenspace_basis(3, 4, 0), InvalidInput);
}

TEST_CASE("flipping the distinguished qubit gives the W-type pattern") {
    for (int L = 3; L <= 8; ++L) {
        std::vector<std::size_t> flipped;
        for (auto k : eigenspace_basis(L, 1, 0).kets) flipped.push_back(k ^ qubit_mask(L, 0));
        std::sort(flipped.begin(), flipped.end());
        CHECK(flipped == excitation_pattern(L, 1));
    }
}

TEST_CASE("wall condition holds exactly at k = 1") {
    std::mt19937_64 rng(31);
    for (int L = 3; L <= 8; ++L) {
        for (int k = 0; k <= L; ++k) {
            const auto basis = eigenspace_basis(L, k, 0);
            const StateVector v = random_in(basis.kets, L, rng);
            const bool expected = (L - k - 1) == (L - 2);
            CHECK(check_wall_condition(v, L, k, 0) == expected);
        }
    }
    // k = L - 1 at L = 2 coincides with k = 1.
    const StateVector v2 = random_in(eigenspace_basis(2, 1, 0).kets, 2, rng);
    CHECK(check_wall_condition(v2, 2, 1, 0));
    // The L = 5 examples.
    CHECK(check_wall_condition(random_in(eigenspace_basis(5, 1, 0).kets, 5, rng), 5, 1, 0));
    CHECK_FALSE(check_wall_condition(random_in(eigenspace_basis(5, 2, 0).kets, 5, rng), 5, 2, 0));
    // Vectors outside the eigenspace are rejected.
    CHECK_THROWS_AS(check_wall_condition(basis_state(3, 0), 1, 0), InvalidInput);
}

TEST_CASE("wall_state example") {
    const std::vector<double> alpha{1.0 / 6, 1.0 / 3, 1.0 / 3};
    const PureState s = wall_state(alpha, std::vector<double>(3, 0.0));
    StateVector expected = StateVector::Zero(8);
    expected[0b111] = std::sqrt(2.0 / 3);
    expected[0b001] = std::sqrt(1.0 / 6);
    expected[0b010] = std::sqrt(1.0 / 6);
    CHECK((s.amplitudes() - expected).norm() < 1e-15);
    const auto p = psi_map(s).lambdas;
    for (int l = 0; l < 3; ++l) CHECK(std::abs(p[l] - alpha[l]) < 1e-12);
}

TEST_CASE("wall_state properties") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
    for (int L = 3; L <= 5; ++L) {
        for (int i = 0; i < 100; ++i) {
            const int d = static_cast<int>(rng() % L);
            const auto alpha = wall_point(L, d, rng);
            std::vector<double> phases(L);
            for (auto& x : phases) x = angle(rng);
            const PureState a = wall_state(alpha, phases, d);
            const PureState b = wall_state(alpha, std::vector<double>(L, 0.0), d);
            const auto pa = psi_map(a).lambdas;
            const auto pb = psi_map(b).lambdas;
            const auto ua = purity_invariants(a);
            const auto ub = purity_invariants(b);
            double wall_eq = -pa[d] - (L - 2) / 2.0;
            for (int l = 0; l < L; ++l) {
                const Matrix2 rho = oracle::reduced(a.amplitudes(), L, l);
                CHECK(std::abs(rho(0, 1)) < 1e-12);
                CHECK(std::abs(pa[l] - alpha[l]) < 1e-10);
                CHECK(std::abs(pa[l] - pb[l]) < 1e-12);
                CHECK(std::abs(ua[l] - ub[l]) < 1e-12);
                if (l != d) wall_eq += pa[l];
            }
            CHECK(std::abs(wall_eq) < 1e-10);
            CHECK(check_wall_condition(a, 1, d));
        }
    }
}

TEST_CASE("wall_state rejects points off the walls") {
    const std::vector<double> zero3(3, 0.0);
    CHECK_THROWS_AS(wall_state(std::vector<double>{0.1, 0.1, 0.1}, zero3), InvalidInput);
    CHECK_THROWS_AS(wall_state(std::vector<double>{0.5, 0.25, 0.25}, zero3), InvalidInput);
    CHECK_THROWS_AS(wall_state(std::vector<double>{1.0 / 6, 1.0 / 3, 1.0 / 3}, std::vector<double>(2, 0.0)), InvalidInput);
    CHECK_THROWS_AS(wall_state(std::vector<double>{1.0 / 6, 1.0 / 3, 1.0 / 3}, zero3, 1), InvalidInput);
    CHECK(tight_wall_index(std::vector<double>{1.0 / 6, 1.0 / 3, 1.0 / 3}) == 0);
    CHECK_FALSE(tight_wall_index(std::vector<double>{0.1, 0.1, 0.1}).has_value());
}

TEST_CASE("torus certificate") {
    for (int L = 3; L <= 10; ++L) {
        const auto c = torus_transitivity_check(L);
        CHECK(c.rank == L);
        CHECK(c.transitive);
        // Floating-point rank of the same integer matrix as an independent check.
        Eigen::MatrixXd m(L, L);
        for (int i = 0; i < L; ++i) {
            for (int j = 0; j < L; ++j) m(i, j) = c.matrix[i][j];
        }
        CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() == L);
        // Row l must be the torus weight of the ket carrying c_l.
        for (int j = 0; j < L; ++j) CHECK(c.matrix[0][j] == -1);
        for (int l = 1; l < L; ++l) {
            for (int j = 0; j < L; ++j) CHECK(c.matrix[l][j] == ((j == 0 || j == l) ? 1 : -1));
        }
    }
    CHECK_THROWS_AS(torus_transitivity_check(2), InvalidInput);
}

}
