"""One-qubit marginal polytope and local-unitary invariants of L-qubit pure states.

Qubit labels are 1-based throughout the Python API, matching the JSON reports.
"""

from fractions import Fraction

from ._lupoly import (
    InvalidInput,
    InvariantViolation,
    NumericalFailure,
    PureState,
    apply_local_unitary,
    basis_state,
    facets,
    ghz_state,
    lemma_family_state,
    membership,
    momentum_map,
    numeric_dim,
    orbit_dimensions,
    psi_map,
    purity_invariants,
    random_state,
    rank_dmu,
    reduced_matrix,
    run_cli,
    sample_fiber,
    stable_state,
    torus_certificate,
    verify_stable,
    vertices,
    w_state,
    wall_operator,
    wall_state,
)
from ._lupoly import classify as _classify
from ._lupoly import dim as _dim


def _normalize(lambdas):
    return [f"{x.numerator}/{x.denominator}" if isinstance(x, Fraction) else x for x in lambdas]


def classify(lambdas, tol=1e-9):
    """Classify a point; Fraction or string entries switch to exact arithmetic."""
    return _classify(_normalize(lambdas), tol)


def dim(lambdas, tol=1e-9):
    """Dimension report of the reduced space; Fraction or string entries are exact."""
    return _dim(_normalize(lambdas), tol)


__all__ = [name for name in dir() if not name.startswith("_")]
