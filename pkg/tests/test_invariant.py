import numpy as np
import pytest

from qswnet.analytic.invariant import invariant_subspace_report
from qswnet.discrimination.states import symmetric_pure_pair
from tests.conftest import random_network

TRAPPED_BLOCK = {"a13", "a14", "a23", "a24", "b12", "b34"}


@pytest.mark.parametrize("p", [0.0, 0.4, 1.0])
def test_reduced_network_traps_the_ry_block(reduced, rng, p):
    ham, trans = random_network(reduced, rng)
    report = invariant_subspace_report(reduced, ham, trans, p)
    assert TRAPPED_BLOCK <= set(report.trapped_directions)
    assert report.is_trapped("b12")
    assert "b12" in report.input_trapped
    assert not set(report.trapped_directions) & set(report.sink_reachable)


def test_coherent_walk_reaches_through_the_real_coherence(reduced, rng):
    ham, trans = random_network(reduced, rng)
    report = invariant_subspace_report(reduced, ham, trans, 0.0)
    assert "a12" in report.sink_reachable
    assert "rho11" in report.sink_reachable
    assert not report.is_trapped("rho22")


def test_intra_layer_links_free_every_input_direction(full, rng):
    ham, trans = random_network(full, rng)
    report = invariant_subspace_report(full, ham, trans, 0.0)
    assert report.input_trapped == ()
    assert "b12" in report.sink_reachable


def test_sink_coordinates_are_left_out(reduced, rng):
    ham, trans = random_network(reduced, rng)
    report = invariant_subspace_report(reduced, ham, trans, 0.5)
    labels = set(report.trapped_directions) | set(report.sink_reachable)
    assert not {label for label in labels if "5" in label or "6" in label}


def test_trapped_weight(reduced, rng):
    ham, trans = random_network(reduced, rng)
    report = invariant_subspace_report(reduced, ham, trans, 0.0)
    real_pair = symmetric_pure_pair(np.pi / 8)
    primed_pair = symmetric_pure_pair(np.pi / 8, xi=-np.pi / 2)
    assert report.trapped_weight(real_pair.states[0].rho) == pytest.approx(0.0, abs=1e-14)
    assert report.trapped_weight(primed_pair.states[0].rho) > 0.1
