import json
import math
from fractions import Fraction

import numpy as np
import pytest

import lupoly


def test_psi_of_named_states():
    assert lupoly.psi_map(lupoly.ghz_state(4)) == pytest.approx([0, 0, 0, 0], abs=1e-15)
    assert lupoly.psi_map(lupoly.basis_state(4, 0)) == pytest.approx([0.5] * 4)
    assert lupoly.psi_map(lupoly.w_state(3)) == pytest.approx([1 / 6] * 3)
    rho = lupoly.reduced_matrix(lupoly.w_state(3), 1)
    assert np.allclose(rho, np.diag([2 / 3, 1 / 3]))


def test_state_round_trip_and_validation():
    s = lupoly.random_state(3, 7)
    assert s.num_qubits == 3
    assert np.allclose(lupoly.random_state(3, 7).amplitudes, s.amplitudes)
    again = lupoly.PureState.from_json(json.dumps(s.to_json()))
    assert np.allclose(again.amplitudes, s.amplitudes)
    with pytest.raises(ValueError):
        lupoly.PureState(np.array([1, 1, 0, 0], dtype=complex))
    assert lupoly.PureState(np.array([1, 1, 0, 0], dtype=complex), renormalize=True).num_qubits == 2


def test_purity_identity_and_invariance():
    rng = np.random.default_rng(1)
    s = lupoly.random_state(4, 11)
    lam = np.array(lupoly.psi_map(s))
    assert np.allclose(lupoly.purity_invariants(s), 0.5 + 2 * lam**2, atol=1e-12)
    factors = []
    for _ in range(4):
        q = rng.normal(size=4)
        a, b, c, d = q / np.linalg.norm(q)
        factors.append(np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]]))
    moved = lupoly.apply_local_unitary(s, factors)
    assert np.allclose(lupoly.psi_map(moved), lam, atol=1e-10)


def test_dimension_reports():
    r = lupoly.dim([0, 0.1, 0.2, 0.15])
    assert (r["dim_M"], r["num_invariants"], r["formula"], r["status"]) == (12, 16, "case3", "paper-exact")
    wall = lupoly.dim([Fraction(1, 6), Fraction(1, 3), Fraction(1, 3)])
    assert wall["formula"] == "case2" and wall["classification"]["tight_walls"] == [1]
    assert lupoly.classify(["1/6", "1/3", "1/3"])["tight_walls"] == [1]
    with pytest.raises(ValueError):
        lupoly.classify([0.6, 0.1, 0.1])
    assert lupoly.membership([0.6, 0.1, 0.1])["member"] is False


def test_polytope_and_wall():
    v = lupoly.vertices(4, oracle=True)
    assert v["count"] == 12 and v["oracle_agrees"]
    assert len(lupoly.facets(5)) == 15
    spec = {e["value"]: e["multiplicity"] for e in lupoly.wall_operator(4)["eigenvalues"]}
    assert spec == {-4: 1, -2: 4, 0: 6, 2: 4, 4: 1}
    assert lupoly.torus_certificate(6)["rank"] == 6
    s = lupoly.wall_state([1 / 6, 1 / 3, 1 / 3])
    amps = s.amplitudes
    assert math.isclose(abs(amps[7]) ** 2, 2 / 3) and math.isclose(abs(amps[1]) ** 2, 1 / 6)


def test_stability():
    assert lupoly.verify_stable(lupoly.stable_state(5), 5)["stable"]
    with pytest.raises(ValueError):
        lupoly.stable_state(4, 1.0)
    probe = lupoly.orbit_dimensions(lupoly.lemma_family_state(4, 1.0))
    assert probe["dim_G_orbit_complex"] < 12
    assert lupoly.orbit_dimensions(lupoly.ghz_state(3))["dim_K_orbit"] == 7


def test_fiber_oracle():
    state, report = lupoly.sample_fiber([1 / 6] * 3, seed=3)
    assert report["residual"] < 1e-10
    assert lupoly.psi_map(state) == pytest.approx([1 / 6] * 3, abs=1e-9)
    est = lupoly.numeric_dim([0.1, 0.1, 0.1], samples=5, seed=1)
    assert est["dim_estimate"] == 2 and est["regular"]
    assert lupoly.rank_dmu(lupoly.basis_state(4, 0)) == 8
    with pytest.raises(ValueError):
        lupoly.numeric_dim([0.5, 0.1, 0.2, 0.15])


def test_in_process_cli():
    code, out, _ = lupoly.run_cli(["dim", "--lambda", "0,0.1,0.2,0.15"])
    assert code == 0 and json.loads(out)["dim_M"] == 12
    code, _, err = lupoly.run_cli(["dim", "--bogus"])
    assert code == 1 and "Usage" in err
