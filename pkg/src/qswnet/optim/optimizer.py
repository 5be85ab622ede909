"""Multi-start maximization of the probability of correct decision."""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from qswnet.discrimination.measurement import check_ensemble_fits
from qswnet.discrimination.states import StateEnsemble
from qswnet.dynamics.evolution import population_readout_rows
from qswnet.dynamics.liouvillian import Hamiltonian, TransitionMatrix, liouvillian_matrix, vec
from qswnet.errors import ConfigError, NumericalError
from qswnet.network.topology import Topology
from qswnet.optim.finite_difference import finite_difference_gradient
from qswnet.optim.parametrization import ParameterLayout, ParameterVector
from qswnet.utils.const import DEFAULT_GAMMA
from qswnet.utils.misc import spawn_rng

logger = logging.getLogger(__name__)


@dataclass
class OptimizerConfig:
    restarts: int = 16
    max_iters: int = 500
    tol: float = 1e-8
    seed: int = 0
    fd_step: float = 1e-6
    method: str = "BFGS"
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1:
            raise ConfigError("At least one restart is needed, got %r" % self.restarts)
        if self.max_iters < 1:
            raise ConfigError("max_iters must be positive, got %r" % self.max_iters)
        if self.tol <= 0 or self.fd_step <= 0:
            raise ConfigError("tol and fd_step must be positive")
        if self.workers < 1:
            raise ConfigError("workers must be positive, got %r" % self.workers)


@dataclass
class OptimizationResult:
    best_h: Hamiltonian
    best_t: TransitionMatrix
    best_pc: float
    history: list
    restarts_used: int
    converged: bool = True
    restart_pcs: tuple = ()
    best_restart: int = 0
    params: ParameterVector = field(default=None, repr=False)


class DetectionObjective:
    """
    P_c as a function of the flat parameter array, for a fixed (topology, p, tau, ensemble).

    Only the rows of the propagator that land on the scoring sinks are used.
    """

    def __init__(self, topology: Topology, p, tau, ensemble: StateEnsemble, gamma=DEFAULT_GAMMA):
        if not 0 <= p <= 1:
            raise ConfigError("Smoothing parameter p must lie in [0, 1], got %r" % p)
        if tau < 0:
            raise ConfigError("Evolution time must be non-negative, got %r" % tau)
        check_ensemble_fits(topology, ensemble)
        self.topology = topology
        self.layout = ParameterLayout(topology)
        self.p = float(p)
        self.tau = float(tau)
        self.gamma = float(gamma)
        self.priors = ensemble.priors
        n = topology.n_total
        self._columns = np.stack([vec(s.embed(n).rho) for s in ensemble.states], axis=1)
        self._rows = population_readout_rows(topology, topology.sink_nodes[: ensemble.size])
        self._last = (None, None)

    def matrices(self, x):
        h_free, t_logits = np.split(np.asarray(x, dtype=float), [self.layout.n_h])
        return self.layout.hamiltonian_matrix(h_free), self.layout.transition_matrix(t_logits)

    def __call__(self, x):
        key = np.asarray(x, dtype=float).tobytes()
        if self._last[0] == key:
            return self._last[1]
        if self.tau == 0:
            value = 0.0
        else:
            h, t = self.matrices(x)
            n = self.topology.n_total
            full_h = np.zeros((n, n))
            full_t = np.zeros((n, n))
            full_h[: h.shape[0], : h.shape[0]] = h
            full_t[: t.shape[0], : t.shape[0]] = t
            generator = liouvillian_matrix(full_h, full_t, self.p, self.gamma, self.topology.sink_pairs)
            readout = expm(self.tau * generator)[self._rows] @ self._columns
            value = float(np.dot(self.priors, np.diag(readout).real))
            if not np.isfinite(value):
                raise NumericalError("Non-finite probability of correct decision")
        self._last = (key, value)
        return value

    def active_mask(self):
        """Coordinates the objective depends on: T is irrelevant at p=0 and H at p=1."""
        active = np.ones(self.layout.size, dtype=bool)
        if self.p == 0:
            active[self.layout.n_h :] = False
        elif self.p == 1:
            active[: self.layout.n_h] = False
        return active


def objective(params: ParameterVector, topology: Topology, p, tau, ensemble: StateEnsemble, gamma=DEFAULT_GAMMA):
    return DetectionObjective(topology, p, tau, ensemble, gamma)(params.as_array())


def initial_point(layout: ParameterLayout, seed, restart):
    """Restart 0 starts from the classical random walk T = A·D⁻¹ (equal logits)."""
    rng = spawn_rng(seed, restart)
    params = layout.random(rng)
    if restart == 0:
        params = ParameterVector(params.h_free, np.zeros(layout.n_t))
    return params.as_array()


def local_ascent(func: DetectionObjective, x0, config: OptimizerConfig):
    """Quasi-Newton ascent from x0 over the active coordinates; returns (x, pc, history, converged)."""
    active = func.active_mask()
    free = np.flatnonzero(active)
    x0 = np.asarray(x0, dtype=float)
    if free.size == 0:
        return x0, func(x0), [func(x0)], True

    def full(y):
        x = x0.copy()
        x[free] = y
        return x

    def restricted(y):
        return func(full(y))

    history = [restricted(x0[free])]
    res = minimize(
        lambda y: -restricted(y),
        x0[free],
        jac=lambda y: -finite_difference_gradient(restricted, y, step=config.fd_step),
        method=config.method,
        callback=lambda yk, *args: history.append(restricted(yk)),
        options={"maxiter": config.max_iters, "gtol": config.tol},
    )
    x = full(res.x)
    return x, func(x), history, bool(res.success)


def _run_restart(args):
    func, x0, config = args
    return local_ascent(func, x0, config)


def maximize(topology: Topology, p, tau, ensemble: StateEnsemble, config: OptimizerConfig = None,
             gamma=DEFAULT_GAMMA) -> OptimizationResult:
    config = OptimizerConfig() if config is None else config
    func = DetectionObjective(topology, p, tau, ensemble, gamma)
    starts = [initial_point(func.layout, config.seed, k) for k in range(config.restarts)]
    jobs = [(func, x0, config) for x0 in starts]

    if config.workers > 1 and config.restarts > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, config.restarts)) as executor:
            outcomes = list(executor.map(_run_restart, jobs))
    else:
        outcomes = [_run_restart(job) for job in jobs]

    restart_pcs = tuple(float(pc) for _, pc, _, _ in outcomes)
    for k, (_, pc, history, converged) in enumerate(outcomes):
        logger.debug("restart %i: P_c=%.10f after %i iterations%s", k, pc, len(history) - 1,
                     "" if converged else " (not converged)")
    best = int(np.argmax(restart_pcs))
    x_best, _, history, converged = outcomes[best]
    params = func.layout.split(x_best)
    best_h, best_t = func.layout.decode(params)
    best_pc = func(x_best)
    logger.info("%s p=%g tau=%g: best P_c=%.8f (restart %i/%i)", topology.name, p, tau, best_pc, best,
                config.restarts)
    return OptimizationResult(
        best_h=best_h,
        best_t=best_t,
        best_pc=best_pc,
        history=list(history),
        restarts_used=config.restarts,
        converged=converged,
        restart_pcs=restart_pcs,
        best_restart=best,
        params=params,
    )
