#include "lupoly/errors.hpp"
#include "lupoly/stability.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <random>

using namespace lupoly;

namespace {

int nonzero_kets(const PureState& s) {
    int n = 0;
    for (std::size_t i = 0; i < s.dim(); ++i) n += std::abs(s[i]) > 1e-14;
    return n;
}

double max_moment(const PureState& s) {
    double worst = 0;
    for (const auto& b : momentum_map(s).blocks) worst = std::max(worst, b.cwiseAbs().maxCoeff());
    return worst;
}

std::vector<int> first_slots(int k) {
    std::vector<int> v(k);
    for (int i = 0; i < k; ++i) v[i] = i;
    return v;
}

// Real rank of d(mu) restricted to `slots`, built from scratch: rows are the
// projected vectors sigma_l phi, split into real and imaginary parts.
int partial_dmu_rank(const PureState& s, int slots) {
    const int L = s.num_qubits();
    const StateVector& phi = s.amplitudes();
    Matrix2 px, py, pz;
    px << 0, 1, 1, 0;
    py << 0, Complex{0, -1}, Complex{0, 1}, 0;
    pz << 1, 0, 0, -1;
    Eigen::MatrixXd m(2 * s.dim(), 3 * slots);
    int col = 0;
    for (int l = 0; l < slots; ++l) {
        for (const Matrix2& p : {px, py, pz}) {
            StateVector w = apply_on_qubit(phi, L, l, p);
            w -= phi.dot(w) * phi;
            m.col(col).head(s.dim()) = w.real();
            m.col(col).tail(s.dim()) = w.imag();
            ++col;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto sv = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) r += sv[i] > 1e-8 * sv[0];
    return r;
}

} // namespace

TEST_SUITE("stability") {

TEST_CASE("generators") {
    const auto g = generator_set(1);
    REQUIRE(g.compact.size() == 3);
    REQUIRE(g.complexified.size() == 3);
    CHECK(g.compact[0].name == "X_1");
    CHECK(g.complexified[2].name == "H_1");
    const auto g2 = generator_set(2);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            const double ip = killing_inner(g2.compact[a].matrix, g2.compact[b].matrix);
            CHECK(ip == doctest::Approx(a == b ? 1.0 : 0.0));
        }
    }
    const auto g3 = generator_set(3);
    const PureState zero = basis_state(3, 0);
    for (const auto& gen : g3.compact) {
        if (gen.name[0] != 'Z') continue;
        CHECK((gen.apply(zero.amplitudes(), 3) - Complex{0, 1} * zero.amplitudes()).norm() < 1e-15);
    }
    CHECK_THROWS_AS(generator_set(0), InvalidInput);
}

TEST_CASE("orbit dimension examples") {
    const auto r0 = orbit_dimensions(basis_state(3, 0));
    CHECK(r0.dim_K_orbit == 6);
    CHECK(r0.dim_isotropy_algebra == 3);
    const auto rg = orbit_dimensions(ghz_state(3));
    CHECK(rg.dim_K_orbit == 7);
    CHECK(rg.dim_isotropy_algebra == 2);
    CHECK(orbit_dimensions(stable_state(5)).dim_G_orbit_complex == 15);
}

TEST_CASE("orbit bookkeeping on random states") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 60; ++i) {
        const int L = 1 + i % 5;
        const auto r = orbit_dimensions(random_state(L, rng));
        CHECK(r.dim_K_orbit + r.dim_isotropy_algebra == 3 * L);
        CHECK(r.dim_K_orbit <= 3 * L);
        CHECK(r.dim_G_orbit_complex <= 3 * L);
    }
}

TEST_CASE("stable family construction") {
    CHECK(nonzero_kets(stable_state(5)) == 10);
    CHECK(nonzero_kets(stable_state(4, 2.0)) == 8);
    for (int L = 4; L <= 8; ++L) CHECK(max_moment(stable_state(L)) < 1e-12);
    CHECK(max_moment(stable_state(4, 5.0)) < 1e-12);
    CHECK_THROWS_AS(stable_state(4, 1.0), InvalidInput);
    CHECK_THROWS_AS(stable_state(4, -3.0), InvalidInput);
    CHECK_THROWS_AS(stable_state(5, 2.0), InvalidInput);
    CHECK_THROWS_AS(stable_state(3), InvalidInput);
}

TEST_CASE("stability verdicts") {
    CHECK(verify_stable(stable_state(5), 5).stable);
    CHECK(verify_stable(stable_state(4, 5.0), 4).stable);
    const auto sep = verify_stable(basis_state(4, 0), 1);
    CHECK_FALSE(sep.moment_zero);
    CHECK_FALSE(sep.stable);
    const auto ghz = verify_stable(ghz_state(4), 4);
    CHECK(ghz.moment_zero);
    CHECK(ghz.subgroup.dim_K_orbit < 12);
    CHECK_FALSE(ghz.stable);
    CHECK_THROWS_AS(verify_stable(ghz_state(4), 5), InvalidInput);
}

TEST_CASE("the excluded GHZ weights at four qubits") {
    for (double a : {-2.0, 0.5, 2.0, 5.0}) {
        const auto v = verify_stable(lemma_family_state(4, a), 4);
        CHECK(v.stable);
        CHECK(v.full.dim_G_orbit_complex == 12);
    }
    for (double a : {1.0, -3.0}) {
        const auto v = verify_stable(lemma_family_state(4, a), 4);
        CHECK_FALSE(v.stable);
        CHECK(v.full.dim_G_orbit_complex < 12);
    }
    // Weight 0 (pairs only) also loses rank.
    CHECK(orbit_dimensions(lemma_family_state(4, 0.0)).dim_G_orbit_complex < 12);
}

TEST_CASE("zero moment and full compact rank give full complex rank") {
    for (int L = 4; L <= 6; ++L) {
        const auto r = orbit_dimensions(stable_state(L));
        CHECK(r.dim_K_orbit == 3 * L);
        CHECK(r.dim_G_orbit_complex == 3 * L);
        CHECK_FALSE(r.ill_conditioned);
    }
}

TEST_CASE("partial subgroup ranks at stable points") {
    for (int L = 4; L <= 5; ++L) {
        const PureState s = stable_state(L);
        const int full = (1 << (L + 1)) - 2;
        for (int k = 1; k <= L; ++k) {
            const auto r = orbit_dimensions(s, kDefaultRankTolerance, first_slots(k));
            CHECK(r.dim_K_orbit == 3 * k);
            CHECK((full - partial_dmu_rank(s, k)) - r.dim_K_orbit == full - 6 * k);
        }
    }
}

}
