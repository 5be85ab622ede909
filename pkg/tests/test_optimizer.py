import numpy as np
import pytest

from qswnet.discrimination.bounds import helstrom_binary
from qswnet.discrimination.states import equiphase_states, symmetric_pure_pair
from qswnet.errors import ConfigError, UnsupportedEnsembleError
from qswnet.optim.optimizer import DetectionObjective, OptimizerConfig, initial_point, local_ascent, maximize

SMALL = OptimizerConfig(restarts=2, max_iters=40, seed=3)


@pytest.fixture
def pair():
    return symmetric_pure_pair(np.pi / 8)


def test_best_pc_is_bounded_and_consistent(reduced, pair):
    result = maximize(reduced, 0.3, 5.0, pair, SMALL)
    assert 0 < result.best_pc <= helstrom_binary(*pair.states) + 1e-8
    assert result.best_pc == pytest.approx(max(result.restart_pcs), abs=1e-12)
    assert result.restart_pcs[result.best_restart] == max(result.restart_pcs)
    assert result.restarts_used == 2
    result.best_h.check(reduced.mask)
    result.best_t.check(reduced.mask)


def test_ascent_does_not_lose_ground(reduced, pair):
    func = DetectionObjective(reduced, 0.3, 5.0, pair)
    x0 = initial_point(func.layout, seed=3, restart=0)
    _, pc, history, _ = local_ascent(func, x0, SMALL)
    assert pc >= func(x0) - 1e-12
    assert history[0] == func(x0)


def test_same_seed_same_result(reduced, pair):
    first = maximize(reduced, 0.0, 3.0, pair, SMALL)
    second = maximize(reduced, 0.0, 3.0, pair, SMALL)
    assert first.best_pc == second.best_pc
    np.testing.assert_array_equal(first.params.as_array(), second.params.as_array())


def test_first_restart_starts_from_the_classical_walk(reduced):
    func = DetectionObjective(reduced, 0.5, 1.0, symmetric_pure_pair(0.3))
    x0 = initial_point(func.layout, seed=0, restart=0)
    np.testing.assert_array_equal(x0[func.layout.n_h :], 0)
    assert np.any(initial_point(func.layout, seed=0, restart=1)[func.layout.n_h :] != 0)


@pytest.mark.parametrize("p, frozen", [(0.0, "t"), (1.0, "h")])
def test_irrelevant_coordinates_stay_frozen(reduced, pair, p, frozen):
    result = maximize(reduced, p, 4.0, pair, SMALL)
    layout_start = initial_point(DetectionObjective(reduced, p, 4.0, pair).layout, SMALL.seed, result.best_restart)
    n_h = len(result.params.h_free)
    if frozen == "t":
        np.testing.assert_array_equal(result.params.t_logits, layout_start[n_h:])
    else:
        np.testing.assert_array_equal(result.params.h_free, layout_start[:n_h])


def test_zero_time_scores_nothing(reduced, pair):
    assert maximize(reduced, 0.5, 0.0, pair, SMALL).best_pc == 0.0


def test_workers_do_not_change_the_result(reduced, pair):
    serial = maximize(reduced, 0.2, 2.0, pair, SMALL)
    parallel = maximize(reduced, 0.2, 2.0, pair, OptimizerConfig(restarts=2, max_iters=40, seed=3, workers=2))
    assert parallel.restart_pcs == pytest.approx(serial.restart_pcs, abs=1e-12)


@pytest.mark.parametrize("kwargs", [{"restarts": 0}, {"max_iters": 0}, {"tol": 0.0}, {"workers": 0}])
def test_invalid_optimizer_config(kwargs):
    with pytest.raises(ConfigError):
        OptimizerConfig(**kwargs)


def test_invalid_problems(reduced, pair):
    with pytest.raises(ConfigError, match="p must lie"):
        DetectionObjective(reduced, 1.5, 1.0, pair)
    with pytest.raises(ConfigError, match="non-negative"):
        DetectionObjective(reduced, 0.5, -1.0, pair)
    with pytest.raises(UnsupportedEnsembleError):
        DetectionObjective(reduced, 0.5, 1.0, equiphase_states(3))
