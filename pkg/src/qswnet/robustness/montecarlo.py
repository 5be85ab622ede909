"""Monte-Carlo envelopes of the optimized network under preparation noise and static disorder.

Every run draws its uniforms from ``spawn_rng(seed, run)``, so all error levels and grid cells
share the same draws and serial and parallel execution return the same numbers.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from tqdm import tqdm

from qswnet.discrimination.states import StateEnsemble, asymmetric_pair
from qswnet.dynamics.evolution import population_readout_rows, propagator
from qswnet.dynamics.liouvillian import Hamiltonian, TransitionMatrix, build_liouvillian, vec
from qswnet.errors import ConfigError
from qswnet.network.topology import Topology
from qswnet.optim.optimizer import OptimizerConfig, maximize
from qswnet.utils.const import (
    ASYMMETRIC_PAIR,
    DEFAULT_GAMMA,
    NOISE_ADDITIVE,
    NOISE_MULTIPLICATIVE,
    STUDY_DISORDER,
    STUDY_STATE_NOISE,
)
from qswnet.utils.misc import spawn_rng

logger = logging.getLogger(__name__)

NOMINAL = (np.pi / 8, np.pi / 4, 0.5)
# half-widths of the additive draws on (theta, xi, r) at error_pct = 1
ADDITIVE_SCALE = np.array([np.pi / 2, np.pi, 1.0])


@dataclass
class McConfig:
    n_runs: int = 1000
    error_pct: tuple = (0.05,)
    seed: int = 0
    p_values: tuple = (0.0, 0.1)
    tau_values: tuple = (1.0, 10.0)
    model: str = "2-2-2"
    nominal: tuple = NOMINAL
    mode: str = NOISE_MULTIPLICATIVE
    shared_draw: bool = False
    gamma: float = DEFAULT_GAMMA
    optimizer: OptimizerConfig = field(default_factory=lambda: OptimizerConfig(restarts=4))
    workers: int = 1
    progress: bool = False

    def __post_init__(self):
        self.error_pct = tuple(float(d) for d in np.atleast_1d(self.error_pct))
        self.p_values = tuple(float(p) for p in np.atleast_1d(self.p_values))
        self.tau_values = tuple(float(t) for t in np.atleast_1d(self.tau_values))
        self.nominal = tuple(float(v) for v in self.nominal)
        if self.n_runs < 1:
            raise ConfigError("n_runs must be at least 1, got %r" % self.n_runs)
        if not self.error_pct or any(d < 0 for d in self.error_pct):
            raise ConfigError("error_pct must be a non-empty list of non-negative values, got %s" % (self.error_pct,))
        if not self.p_values or not self.tau_values:
            raise ConfigError("Monte-Carlo studies need non-empty p and tau grids")
        if any(not 0 <= p <= 1 for p in self.p_values):
            raise ConfigError("p values must lie in [0, 1], got %s" % (self.p_values,))
        if any(t < 0 for t in self.tau_values):
            raise ConfigError("tau values must be non-negative, got %s" % (self.tau_values,))
        if len(self.nominal) != 3:
            raise ConfigError("nominal must be (theta, xi, r), got %s" % (self.nominal,))
        if self.mode not in (NOISE_MULTIPLICATIVE, NOISE_ADDITIVE):
            raise ConfigError("Unknown noise mode %r" % self.mode)
        if self.workers < 1:
            raise ConfigError("workers must be positive, got %r" % self.workers)


@dataclass(frozen=True)
class McCell:
    p: float
    tau: float
    error_pct: float
    mean: float
    min: float
    max: float
    std: float
    nominal_pc: float
    n_runs: int

    @classmethod
    def from_samples(cls, p, tau, error_pct, samples, nominal_pc):
        samples = np.asarray(samples, dtype=float)
        return cls(
            p=float(p),
            tau=float(tau),
            error_pct=float(error_pct),
            mean=float(np.mean(samples)),
            min=float(np.min(samples)),
            max=float(np.max(samples)),
            std=float(np.std(samples)),
            nominal_pc=float(nominal_pc),
            n_runs=int(samples.size),
        )


@dataclass
class McSummary:
    study: str
    model: str
    cells: list

    def to_frame(self):
        columns = ["study", "model", "p", "tau", "error_pct", "n_runs", "nominal_pc", "mean", "min", "max", "std"]
        rows = [
            [self.study, self.model, c.p, c.tau, c.error_pct, c.n_runs, c.nominal_pc, c.mean, c.min, c.max, c.std]
            for c in self.cells
        ]
        return pd.DataFrame(rows, columns=columns)

    def cell(self, p, tau, error_pct) -> McCell:
        for c in self.cells:
            if np.isclose(c.p, p) and np.isclose(c.tau, tau) and np.isclose(c.error_pct, error_pct):
                return c
        raise KeyError("No cell at p=%g, tau=%g, error_pct=%g" % (p, tau, error_pct))

    def curve(self, p, tau):
        """Cells of one (p, tau) block ordered by error level."""
        block = [c for c in self.cells if np.isclose(c.p, p) and np.isclose(c.tau, tau)]
        return sorted(block, key=lambda c: c.error_pct)


def _perturb(nominal, unit_draws, error_pct, mode):
    nominal = np.asarray(nominal, dtype=float)
    if mode == NOISE_ADDITIVE:
        values = nominal + error_pct * ADDITIVE_SCALE * unit_draws
    else:
        values = nominal * (1 + error_pct * unit_draws)
    values[..., 2] = np.clip(values[..., 2], 0.0, 1.0)
    return values


def _draw_units(rng, shared_draw):
    if shared_draw:
        return np.repeat(rng.uniform(-1, 1, (1, 3)), 2, axis=0)
    return rng.uniform(-1, 1, (2, 3))


def _noisy_pair(values):
    (theta1, xi1, r1), (theta2, xi2, r2) = values
    first = asymmetric_pair(theta1, xi1, r1).states[0]
    second = asymmetric_pair(theta2, xi2, r2).states[1]
    return StateEnsemble.uniform([first, second], family=ASYMMETRIC_PAIR)


def sample_noisy_ensemble(nominal=NOMINAL, error_pct=0.05, rng=None, mode=NOISE_MULTIPLICATIVE,
                          shared_draw=False) -> StateEnsemble:
    """
    Asymmetric pair at parameters drawn uniformly around ``nominal = (theta, xi, r)``.

    Multiplicative mode draws each parameter in nominal·(1 ± δ); additive mode in
    nominal ± δ·(π/2, π, 1). The first state takes the pure member of one draw, the second
    the mixed member of another draw (the same draw when ``shared_draw``). r is clamped to [0, 1].
    """
    rng = np.random.default_rng() if rng is None else rng
    units = _draw_units(rng, shared_draw)
    return _noisy_pair(_perturb(nominal, units, error_pct, mode))


def sample_noisy_hamiltonian(h_star: Hamiltonian, error_pct, rng) -> Hamiltonian:
    """Each nonzero upper-triangle coupling scaled by an independent uniform(1 − δ, 1 + δ) factor."""
    h = np.array(h_star.h)
    rows, cols = np.nonzero(np.triu(h, 1))
    factors = 1 + error_pct * rng.uniform(-1, 1, rows.size)
    h[rows, cols] *= factors
    h[cols, rows] = h[rows, cols]
    return Hamiltonian(h)


class _Readout:
    """Sink populations of a fixed generator at time tau, ready for many input states."""

    def __init__(self, topology: Topology, ham, trans, p, tau, gamma):
        liouvillian = build_liouvillian(topology, ham, trans, p, gamma)
        self.n_total = topology.n_total
        self.rows = propagator(liouvillian, tau)[population_readout_rows(topology, topology.sink_nodes[:2])]

    def pc(self, ensemble: StateEnsemble):
        columns = np.stack([vec(s.embed(self.n_total).rho) for s in ensemble.states], axis=1)
        readout = (self.rows @ columns).real
        return float(np.dot(ensemble.priors, np.diag(readout)))


def _optimize_nominal(config: McConfig, topology, p, tau):
    nominal = asymmetric_pair(*config.nominal)
    result = maximize(topology, p, tau, nominal, config.optimizer, gamma=config.gamma)
    return nominal, result


def _state_noise_cell(args):
    config, p, tau = args
    topology = Topology.from_model(config.model)
    _, result = _optimize_nominal(config, topology, p, tau)
    readout = _Readout(topology, result.best_h, result.best_t, p, tau, config.gamma)
    units = [_draw_units(spawn_rng(config.seed, run), config.shared_draw) for run in range(config.n_runs)]
    cells = []
    for error_pct in config.error_pct:
        samples = [readout.pc(_noisy_pair(_perturb(config.nominal, u, error_pct, config.mode))) for u in units]
        cells.append(McCell.from_samples(p, tau, error_pct, samples, result.best_pc))
    return cells


def _disorder_cell(args):
    config, p, tau = args
    topology = Topology.from_model(config.model)
    nominal, result = _optimize_nominal(config, topology, p, tau)
    cells = []
    for error_pct in config.error_pct:
        samples = []
        for run in range(config.n_runs):
            ham = sample_noisy_hamiltonian(result.best_h, error_pct, spawn_rng(config.seed, run))
            samples.append(_Readout(topology, ham, result.best_t, p, tau, config.gamma).pc(nominal))
        cells.append(McCell.from_samples(p, tau, error_pct, samples, result.best_pc))
    return cells


def _run_cells(worker, config: McConfig, study):
    Topology.from_model(config.model)
    jobs = [(config, p, tau) for p in config.p_values for tau in config.tau_values]
    logger.info("%s study on %s: %i cells, %i error levels, %i runs", study, config.model, len(jobs),
                len(config.error_pct), config.n_runs)
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, len(jobs))) as executor:
            blocks = list(tqdm(executor.map(worker, jobs), total=len(jobs), disable=not config.progress))
    else:
        blocks = [worker(job) for job in tqdm(jobs, disable=not config.progress)]
    return McSummary(study=study, model=config.model, cells=[c for block in blocks for c in block])


def run_state_noise_study(config: McConfig) -> McSummary:
    return _run_cells(_state_noise_cell, config, STUDY_STATE_NOISE)


def run_disorder_study(config: McConfig) -> McSummary:
    return _run_cells(_disorder_cell, config, STUDY_DISORDER)
