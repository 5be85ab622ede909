import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qswnet.discrimination.bounds import (
    classical_helstrom,
    commuting_optimal_pc,
    ensemble_bound,
    helstrom_binary,
    helstrom_pure,
    ry_zeroed_helstrom,
    square_root_measurement_pc,
    symmetric_mary_bound,
)
from qswnet.discrimination.states import (
    BlochVector,
    asymmetric_pair,
    equiphase_states,
    mub_mixture,
    symmetric_pure_pair,
)
from qswnet.errors import UnsupportedEnsembleError

component = st.floats(-0.57, 0.57)
bloch_vectors = st.builds(BlochVector, component, component, component)


def test_symmetric_pair_bound():
    rho1, rho2 = symmetric_pure_pair(np.pi / 8).states
    assert helstrom_binary(rho1, rho2) == pytest.approx(0.853553, abs=1e-6)
    assert ry_zeroed_helstrom(rho1, rho2) == pytest.approx(0.853553, abs=1e-6)
    assert classical_helstrom(rho1, rho2) == pytest.approx(0.5)


def test_asymmetric_pair_bounds():
    rho1, rho2 = asymmetric_pair().states
    assert helstrom_binary(rho1, rho2) == pytest.approx(0.7795085, abs=1e-6)
    assert ry_zeroed_helstrom(rho1, rho2) == pytest.approx(0.707289, abs=1e-6)
    assert classical_helstrom(rho1, rho2) == pytest.approx(0.588388, abs=1e-6)


def test_primed_pair_is_invisible_without_ry():
    rho1, rho2 = symmetric_pure_pair(np.pi / 8, xi=-np.pi / 2).states
    assert helstrom_binary(rho1, rho2) == pytest.approx(0.853553, abs=1e-6)
    assert ry_zeroed_helstrom(rho1, rho2) == pytest.approx(0.5)


def test_identical_and_orthogonal_states():
    zero, one = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    assert helstrom_binary(zero, zero) == pytest.approx(0.5)
    assert helstrom_binary(zero, one) == pytest.approx(1.0)
    assert helstrom_binary(zero, zero, 0.8, 0.2) == pytest.approx(0.8)


@given(bloch_vectors, bloch_vectors)
def test_bound_hierarchy(b1, b2):
    rho1, rho2 = b1.to_density(), b2.to_density()
    classical = classical_helstrom(rho1, rho2)
    real = ry_zeroed_helstrom(rho1, rho2)
    quantum = helstrom_binary(rho1, rho2)
    assert 0.5 - 1e-12 <= classical <= real + 1e-12
    assert real <= quantum + 1e-12
    assert quantum <= 1.0


@given(st.floats(0, np.pi), st.floats(0, 2 * np.pi), st.floats(0.05, 0.95))
def test_pure_formula_matches_trace_norm(theta, xi, p1):
    psi1 = np.array([1.0, 0.0])
    psi2 = np.array([np.cos(theta), np.exp(1j * xi) * np.sin(theta)])
    rho1, rho2 = np.outer(psi1, psi1.conj()), np.outer(psi2, psi2.conj())
    assert helstrom_pure(psi1, psi2, p1, 1 - p1) == pytest.approx(helstrom_binary(rho1, rho2, p1, 1 - p1), abs=1e-9)


def test_bad_priors():
    with pytest.raises(ValueError, match="Priors"):
        helstrom_binary(np.eye(2) / 2, np.eye(2) / 2, 0.6, 0.6)


@pytest.mark.parametrize("m_states, expected", [(2, 1.0), (3, 2 / 3), (4, 0.5), (8, 0.25)])
def test_equiphase_bound(m_states, expected):
    assert symmetric_mary_bound(equiphase_states(m_states)) == pytest.approx(expected)


@pytest.mark.parametrize("alpha, expected", [(0.0, 0.25), (0.5, 0.625), (1.0, 1.0)])
def test_mub_bound(alpha, expected):
    assert symmetric_mary_bound(mub_mixture(alpha, 4)) == pytest.approx(expected)


def test_square_root_measurement_on_orthogonal_states():
    assert square_root_measurement_pc(mub_mixture(1.0, 3)) == pytest.approx(1.0)


def test_non_commuting_states_have_no_common_basis():
    with pytest.raises(UnsupportedEnsembleError, match="commute"):
        commuting_optimal_pc(equiphase_states(3))


def test_symmetric_bound_needs_a_symmetric_family():
    with pytest.raises(UnsupportedEnsembleError, match="symmetric_pair"):
        symmetric_mary_bound(symmetric_pure_pair(0.3))


def test_ensemble_bound_kind():
    assert ensemble_bound(symmetric_pure_pair(np.pi / 8))[1] == "helstrom"
    value, kind = ensemble_bound(equiphase_states(4))
    assert kind == "symmetric"
    assert value == pytest.approx(0.5)
