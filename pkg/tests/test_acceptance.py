"""Optimization-heavy reproductions; run with ``pytest -m slow``."""
import numpy as np
import pytest

from qswnet.analytic.classical_walk import P1Params, delta_rho, optimal_params_p1, optimal_t_p1, pc_p1_closed
from qswnet.analytic.quantum_walk import fundamental_matrix_p0, optimal_h_p0, pc_p0_closed, wronskian_p0
from qswnet.discrimination.bounds import helstrom_binary, ry_zeroed_helstrom
from qswnet.discrimination.measurement import network_pc
from qswnet.discrimination.states import (
    StateEnsemble,
    asymmetric_pair,
    equiphase_states,
    mub_mixture,
    symmetric_pure_pair,
)
from qswnet.dynamics.evolution import evolve_grid, sink_populations
from qswnet.dynamics.liouvillian import build_liouvillian
from qswnet.network.topology import Topology
from qswnet.optim.optimizer import OptimizerConfig, maximize
from qswnet.robustness.depth import run_depth_study
from qswnet.robustness.montecarlo import McConfig, run_disorder_study, run_state_noise_study
from tests.conftest import random_network, random_qubit

pytestmark = pytest.mark.slow

FULL_SEARCH = OptimizerConfig(restarts=16, workers=4)


def best_pc(model, ensemble, tau=100.0, p=0.0, config=FULL_SEARCH):
    return maximize(Topology.from_model(model), p, tau, ensemble, config).best_pc


def test_coherent_network_reaches_helstrom():
    assert best_pc("2r-2r-2", symmetric_pure_pair(np.pi / 8)) == pytest.approx(0.853553, abs=1e-3)


def test_primed_pair_stops_at_the_real_bound():
    ensemble = symmetric_pure_pair(np.pi / 8, xi=-np.pi / 2)
    rho1, rho2 = ensemble.states
    pc = best_pc("2r-2r-2", ensemble)
    assert pc == pytest.approx(ry_zeroed_helstrom(rho1, rho2), abs=1e-3)
    assert pc <= helstrom_binary(rho1, rho2) - 0.05


def test_topology_ordering():
    ensemble = asymmetric_pair()
    helstrom = helstrom_binary(*ensemble.states)
    pcs = {model: best_pc(model, ensemble) for model in ("2-2-2", "2r-4-2", "2r-2-2", "2-2r-2", "2r-2r-2",
                                                          "2r-2r-2r-2")}
    assert pcs["2-2-2"] == pytest.approx(helstrom, abs=5e-3)
    assert pcs["2r-4-2"] == pytest.approx(helstrom, abs=5e-3)
    for model in ("2r-2-2", "2-2r-2"):
        assert pcs["2r-2r-2"] < pcs[model] < helstrom + 1e-8
    assert pcs["2r-2r-2"] == pytest.approx(pcs["2r-2r-2r-2"], abs=0.01)


def test_classical_network_learns_the_routing_matrix():
    ensemble = asymmetric_pair()
    result = maximize(Topology.from_model("2r-2r-2"), 1.0, 50.0, ensemble, FULL_SEARCH)
    expected = optimal_t_p1(*(delta_rho(s.rho) for s in ensemble.states))
    np.testing.assert_allclose(result.best_t.t, expected.t, atol=1e-2)
    assert result.best_pc == pytest.approx(0.588388, abs=1e-4)


def test_equiphase_four_states():
    pc = best_pc("2-4-4", equiphase_states(4), config=OptimizerConfig(restarts=8, workers=8))
    assert pc == pytest.approx(0.5, abs=0.02)


def test_equiphase_eight_states():
    pc = best_pc("2-8-8", equiphase_states(8), config=OptimizerConfig(restarts=8, max_iters=200, workers=8))
    assert pc == pytest.approx(0.25, abs=0.02)


@pytest.mark.parametrize("alpha, expected", [(1.0, 1.0), (0.0, 0.25)])
def test_mub_mixture_limits(alpha, expected):
    pc = best_pc("4-4-4", mub_mixture(alpha, 4), config=OptimizerConfig(restarts=8, workers=8))
    assert pc == pytest.approx(expected, abs=0.01)


def test_physical_invariants_on_random_networks():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        topology = Topology.from_model(rng.choice(["2r-2r-2", "2-2-2", "2r-4-2"]))
        ham, trans = random_network(topology, rng, scale=2.0)
        liouvillian = build_liouvillian(topology, ham, trans, rng.uniform())
        ensemble = StateEnsemble.uniform([random_qubit(rng), random_qubit(rng)])
        taus = np.sort(rng.uniform(0, 20, 4))
        states = evolve_grid(liouvillian, ensemble.states[0], taus)
        for state in states:
            assert abs(state.trace - 1) <= 1e-9
            assert state.min_eigenvalue >= -1e-9
        sinks = np.array([sink_populations(s, topology) for s in states])
        assert np.all(np.diff(sinks, axis=0) >= -1e-10)
        pc = network_pc(topology, ham, trans, liouvillian.p, taus[-1], ensemble)
        assert pc <= helstrom_binary(*ensemble.states) + 1e-8


def test_wronskian_identity():
    rng = np.random.default_rng(7)
    for _ in range(100):
        h, t = rng.uniform(0.01, np.sqrt(1 / 8) - 0.01), rng.uniform(0, 5)
        assert np.linalg.det(fundamental_matrix_p0(h, t)) == pytest.approx(wronskian_p0(h, t), abs=1e-10)


def test_coherent_optimum_beats_a_scan():
    rng = np.random.default_rng(11)
    for tau in (0.5, 2.0, 10.0):
        best = pc_p0_closed(np.pi / 8, optimal_h_p0(np.pi / 8, tau), tau)
        for h in rng.uniform(0, 3, 100):
            assert best >= pc_p0_closed(np.pi / 8, h, tau) - 1e-10


def test_classical_optimum_beats_a_scan():
    rng = np.random.default_rng(13)
    d1, d2 = (delta_rho(s.rho) for s in asymmetric_pair().states)
    best = pc_p1_closed(d1, d2, optimal_params_p1(d1, d2), 10.0)
    for _ in range(200):
        assert best >= pc_p1_closed(d1, d2, P1Params.random(rng), 10.0) - 1e-12


def test_preparation_noise_trend():
    config = McConfig(n_runs=1000, error_pct=(0.0, 0.05, 0.1, 1.0), p_values=(0.0,), tau_values=(10.0,),
                      mode="additive", optimizer=OptimizerConfig(restarts=8), workers=1)
    curve = run_state_noise_study(config).curve(0.0, 10.0)
    assert curve[1].mean == pytest.approx(curve[0].nominal_pc, abs=0.01)
    assert curve[-1].mean < curve[2].mean


def first_level_below_half(curve):
    return next((cell.error_pct for cell in curve if cell.mean < 0.5), np.inf)


def test_multiplicative_noise_pushes_short_times_below_chance():
    config = McConfig(n_runs=300, error_pct=(0.0, 0.1, 0.25, 0.5, 1.0), p_values=(0.0,), tau_values=(1.0, 10.0))
    summary = run_state_noise_study(config)
    means = np.array([cell.mean for cell in summary.curve(0.0, 1.0)])
    assert np.all(np.diff(means) <= 1e-12)
    assert means[-1] < 0.5
    assert summary.curve(0.0, 10.0)[-1].mean > 0.5


def test_dephasing_delays_the_disorder_crossover():
    config = McConfig(n_runs=300, error_pct=(0.0, 0.5, 1.0, 1.5, 2.0, 2.5), p_values=(0.0, 0.1), tau_values=(10.0,))
    summary = run_disorder_study(config)
    coherent = first_level_below_half(summary.curve(0.0, 10.0))
    assert np.isfinite(coherent)
    assert first_level_below_half(summary.curve(0.1, 10.0)) > coherent


def test_depth_keeps_the_gap_open():
    optimizer = OptimizerConfig(restarts=2, max_iters=100)
    frame = run_depth_study(depths=(1, 2, 4, 8), taus=(0.1, 100.0), optimizer=optimizer)
    short = frame[frame["tau"] == 0.1].sort_values("depth")["pc"].to_numpy()
    assert np.all(np.diff(short) < 0)
    assert np.all(frame["gap"] >= 0.01)
