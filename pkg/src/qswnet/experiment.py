"""Experiment commands behind the command line: each one builds a table and writes it as CSV."""
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from tqdm import tqdm

from qswnet import __version__
from qswnet.analytic.classical_walk import P1Params, delta_rho, optimal_params_p1, pc_p1_closed
from qswnet.analytic.quantum_walk import P0Ansatz, optimal_h_p0, pc_p0_closed
from qswnet.discrimination.bounds import (
    classical_helstrom,
    ensemble_bound,
    helstrom_binary,
    ry_zeroed_helstrom,
    square_root_measurement_pc,
    symmetric_mary_bound,
)
from qswnet.discrimination.measurement import MeasurementSetup, check_ensemble_fits
from qswnet.discrimination.states import StateEnsemble, asymmetric_pair, make_ensemble, symmetric_pure_pair
from qswnet.dynamics.evolution import evolve_grid
from qswnet.dynamics.liouvillian import Hamiltonian, TransitionMatrix, build_liouvillian
from qswnet.errors import ConfigError, NumericalError, QswError
from qswnet.network.topology import Topology
from qswnet.optim.optimizer import OptimizerConfig, maximize
from qswnet.robustness.depth import DEPTHS, TAUS, default_depth_ensemble, run_depth_study
from qswnet.robustness.montecarlo import McConfig, run_disorder_study, run_state_noise_study
from qswnet.tracker import Tracker
from qswnet.utils.config import Config
from qswnet.utils.const import (
    EQUIPHASE,
    MUB_MIXTURE,
    NOISE_MULTIPLICATIVE,
    STUDY_DISORDER,
    STUDY_STATE_NOISE,
    SYMMETRIC_PAIR,
)
from qswnet.utils.io import create_folder, write_table
from qswnet.utils.misc import parse_grid, unused_kwargs

logger = logging.getLogger(__name__)

BOUND_ATOL = 1e-6
DEFAULT_MODEL = "2r-2r-2"
ANALYTIC_MODEL = "2r-2r-2"


def _plain(section):
    if section is None:
        return {}
    return section.to_dict() if hasattr(section, "to_dict") else dict(section)


@dataclass
class ExperimentConfig:
    name: str = "qswnet"
    seed: int = 0
    model: str = DEFAULT_MODEL
    gamma: float = 1.0
    ensemble: dict = None
    p_grid: tuple = (0.0,)
    tau_grid: tuple = (10.0,)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    robustness: dict = field(default_factory=dict)
    depth: dict = field(default_factory=dict)
    analytic: dict = field(default_factory=dict)
    out: str = None
    workers: int = 1
    timings: bool = False
    progress: bool = True
    tracking_uri: str = None
    config_hash: str = ""

    @classmethod
    def from_config(cls, config: Config):
        experiment = _plain(config.get("experiment"))
        grid = _plain(config.get("grid"))
        runtime = _plain(config.get("runtime"))
        tracking = _plain(config.get("tracking"))
        seed = int(experiment.get("seed", 0))

        optimizer_values = _plain(config.get("optimizer"))
        unknown = unused_kwargs(OptimizerConfig, optimizer_values)
        if unknown:
            raise ConfigError("Unknown optimizer setting(s) %s" % unknown)
        optimizer_values.setdefault("seed", seed)
        optimizer = OptimizerConfig(**optimizer_values)

        ensemble = config.get("ensemble")
        try:
            p_grid = parse_grid(grid.get("p", 0.0))
            tau_grid = parse_grid(grid.get("tau", 10.0))
        except (TypeError, ValueError) as e:
            raise ConfigError("Malformed grid: %s" % e) from e
        return cls(
            name=str(experiment.get("name", "qswnet")),
            seed=seed,
            model=str(config.get("model", DEFAULT_MODEL)),
            gamma=float(config.get("gamma", 1.0)),
            ensemble=None if ensemble is None else _plain(ensemble),
            p_grid=p_grid,
            tau_grid=tau_grid,
            optimizer=optimizer,
            robustness=_plain(config.get("robustness")),
            depth=_plain(config.get("depth")),
            analytic=_plain(config.get("analytic")),
            out=runtime.get("out"),
            workers=int(runtime.get("workers") or os.cpu_count() or 1),
            timings=bool(runtime.get("timings", False)),
            progress=bool(runtime.get("progress", True)),
            tracking_uri=tracking.get("uri"),
            config_hash=config.config_hash,
        )

    def topology(self, model=None) -> Topology:
        return Topology.from_model(self.model if model is None else model)

    def make_ensemble(self, default=None) -> StateEnsemble:
        """Configured ensemble, or ``default()`` (the θ = π/8 symmetric pair) when none is set."""
        if self.ensemble is None:
            return default() if default is not None else symmetric_pure_pair(np.pi / 8)
        parameters = dict(self.ensemble)
        family = parameters.pop("family", SYMMETRIC_PAIR)
        try:
            return make_ensemble(family, **parameters)
        except QswError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError("Ensemble %r: %s" % (family, e)) from e

    def validate(self):
        """Check that a sweep over this configuration can run."""
        if not self.p_grid or not self.tau_grid:
            raise ConfigError("Empty p or tau grid")
        if any(not 0 <= p <= 1 for p in self.p_grid):
            raise ConfigError("p values must lie in [0, 1], got %s" % (self.p_grid,))
        if any(t < 0 for t in self.tau_grid):
            raise ConfigError("tau values must be non-negative, got %s" % (self.tau_grid,))
        if self.gamma <= 0:
            raise ConfigError("gamma must be positive, got %r" % self.gamma)
        check_ensemble_fits(self.topology(), self.make_ensemble())
        return self

    def metadata(self, command, **extra):
        family = (self.ensemble or {}).get("family", SYMMETRIC_PAIR)
        values = {
            "qswnet": __version__,
            "command": command,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "model": self.model,
            "ensemble": family,
        }
        values.update(extra)
        return values


@dataclass
class ResultRow:
    model: str
    p: float
    tau: float
    pc_optimized: float
    bound: float
    bound_kind: str
    restarts: int
    runtime_s: float = float("nan")
    helstrom: float = None
    ry_zeroed: float = None


@dataclass
class ResultTable:
    rows: list

    @property
    def binary(self):
        return bool(self.rows) and self.rows[0].helstrom is not None

    def to_frame(self, include_runtime=False):
        columns = ["model", "p", "tau", "pc_optimized", "bound", "bound_kind", "restarts"]
        if self.binary:
            columns += ["helstrom", "ry_zeroed"]
        if include_runtime:
            columns.append("runtime_s")
        return pd.DataFrame([[getattr(r, c) for c in columns] for r in self.rows], columns=columns)

    def check_bounds(self, atol=BOUND_ATOL):
        for r in self.rows:
            if not np.isfinite(r.pc_optimized) or r.pc_optimized > r.bound + atol:
                raise NumericalError("P_c=%.10g exceeds the %s bound %.10g at p=%g, tau=%g"
                                     % (r.pc_optimized, r.bound_kind, r.bound, r.p, r.tau))
        return self


def _open_tracker(exp: ExperimentConfig, command, params):
    if not exp.tracking_uri:
        return None
    tracker = Tracker(exp.name, tracker_uri=exp.tracking_uri)
    tracker.log_params(**params)
    tracker.set_tags(command=command, config_hash=exp.config_hash)
    tracker.create_run(run_name="%s-%s" % (command, exp.config_hash))
    return tracker


def _close_tracker(tracker, exp: ExperimentConfig):
    if tracker is None:
        return
    if exp.out:
        tracker.log_artifacts(exp.out)
    tracker.set_status("FINISHED")


def _emit(frame, exp: ExperimentConfig, metadata):
    write_table(frame, exp.out, metadata=metadata)
    if exp.out:
        logger.info("Wrote %i rows to %s", len(frame), exp.out)


def _sweep_cell(args):
    topology, p, tau, ensemble, optimizer, gamma = args
    start = time.perf_counter()
    result = maximize(topology, p, tau, ensemble, optimizer, gamma=gamma)
    return result.best_pc, time.perf_counter() - start


def cmd_sweep(exp: ExperimentConfig, params=None) -> ResultTable:
    """Optimize every (p, tau) cell independently and write one row per cell."""
    exp.validate()
    topology = exp.topology()
    ensemble = exp.make_ensemble()
    bound, kind = ensemble_bound(ensemble)
    helstrom = ry_zeroed = None
    if ensemble.size == 2:
        rho1, rho2 = ensemble.states
        helstrom = helstrom_binary(rho1, rho2, *ensemble.priors)
        ry_zeroed = ry_zeroed_helstrom(rho1, rho2, *ensemble.priors)

    cells = [(p, tau) for p in exp.p_grid for tau in exp.tau_grid]
    jobs = [(topology, p, tau, ensemble, exp.optimizer, exp.gamma) for p, tau in cells]
    logger.info("Sweep on %s: %i cells, %s bound %.6f", topology.name, len(cells), kind, bound)
    tracker = _open_tracker(exp, "sweep", params or {})
    if exp.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(exp.workers, len(jobs))) as executor:
            outcomes = list(tqdm(executor.map(_sweep_cell, jobs), total=len(jobs), disable=not exp.progress))
    else:
        outcomes = [_sweep_cell(job) for job in tqdm(jobs, disable=not exp.progress)]

    rows = []
    for step, ((p, tau), (pc, runtime)) in enumerate(zip(cells, outcomes)):
        rows.append(ResultRow(model=topology.name, p=p, tau=tau, pc_optimized=pc, bound=bound, bound_kind=kind,
                              restarts=exp.optimizer.restarts, runtime_s=runtime, helstrom=helstrom,
                              ry_zeroed=ry_zeroed))
        if tracker is not None:
            tracker.log_metrics(step, pc=pc, bound=bound)
    table = ResultTable(rows).check_bounds()
    _emit(table.to_frame(include_runtime=exp.timings), exp, exp.metadata("sweep"))
    _close_tracker(tracker, exp)
    return table


def bound_report(ensemble: StateEnsemble) -> pd.DataFrame:
    rows = []
    if ensemble.size == 2:
        rho1, rho2 = ensemble.states
        rows += [
            ("helstrom", helstrom_binary(rho1, rho2, *ensemble.priors)),
            ("classical_helstrom", classical_helstrom(rho1, rho2, *ensemble.priors)),
            ("ry_zeroed_helstrom", ry_zeroed_helstrom(rho1, rho2, *ensemble.priors)),
        ]
    if ensemble.family in (EQUIPHASE, MUB_MIXTURE):
        rows.append(("symmetric", symmetric_mary_bound(ensemble)))
    if ensemble.size > 2:
        rows.append(("square_root_measurement", square_root_measurement_pc(ensemble)))
    return pd.DataFrame(rows, columns=["bound", "value"])


def cmd_bounds(exp: ExperimentConfig) -> pd.DataFrame:
    ensemble = exp.make_ensemble()
    frame = bound_report(ensemble)
    _emit(frame, exp, exp.metadata("bounds", states=ensemble.size))
    return frame


def _analytic_taus(section):
    taus = parse_grid(section.get("tau", "0.5,1,5,10"))
    if not taus or any(t < 0 for t in taus):
        raise ConfigError("Analytic comparison needs a non-empty grid of non-negative times")
    return taus


def _populations_over_grid(topology, ham, trans, p, ensemble, taus, gamma):
    liouvillian = build_liouvillian(topology, ham, trans, p, gamma)
    setup = MeasurementSetup.from_topology(topology)
    per_state = [evolve_grid(liouvillian, s, taus) for s in ensemble.states]
    pcs = []
    for k in range(len(taus)):
        sinks = [setup.outcome_probabilities(states[k])[0] for states in per_state]
        pcs.append(float(sum(prior * sinks[m][m] for m, prior in enumerate(ensemble.priors))))
    return np.array(pcs)


def analytic_p0_table(theta=np.pi / 8, h=None, taus=(0.5, 1, 5, 10), gamma=1.0):
    """Closed form against numeric evolution of the coherent ansatz; h=None uses the optimal h per tau."""
    topology = Topology.from_model(ANALYTIC_MODEL)
    ensemble = symmetric_pure_pair(theta)
    trans = TransitionMatrix.classical(topology)
    rows = []
    for tau in taus:
        h_tau = optimal_h_p0(theta, tau) if h is None else h
        ham = P0Ansatz(h_tau, theta).embedded(topology)
        numeric = _populations_over_grid(topology, ham, trans, 0.0, ensemble, [tau], gamma)[0]
        closed = pc_p0_closed(theta, h_tau, tau)
        rows.append([tau, h_tau, closed, numeric, abs(closed - numeric)])
    return pd.DataFrame(rows, columns=["tau", "h", "pc_closed", "pc_numeric", "deviation"])


def analytic_p1_table(ensemble: StateEnsemble, d=None, taus=(0.5, 1, 5, 10), gamma=1.0):
    """Closed form against numeric evolution of the biased classical walk; d=None uses the optimum."""
    if ensemble.size != 2 or ensemble.dim != 2:
        raise ConfigError("The classical closed form needs a pair of qubit states")
    topology = Topology.from_model(ANALYTIC_MODEL)
    dr1, dr2 = (delta_rho(s.rho) for s in ensemble.states)
    try:
        params = optimal_params_p1(dr1, dr2) if d is None else P1Params(*d)
    except (TypeError, ValueError) as e:
        raise ConfigError("Infeasible classical walk parameters: %s" % e) from e
    ham = Hamiltonian.zeros(topology)
    numeric = _populations_over_grid(topology, ham, params.embedded(topology), 1.0, ensemble, taus, gamma)
    rows = []
    for tau, value in zip(taus, numeric):
        closed = pc_p1_closed(dr1, dr2, params, tau)
        rows.append([tau, closed, value, abs(closed - value)])
    return pd.DataFrame(rows, columns=["tau", "pc_closed", "pc_numeric", "deviation"])


def cmd_analytic(exp: ExperimentConfig, kind=None) -> pd.DataFrame:
    section = exp.analytic
    kind = kind or section.get("kind", "p0")
    taus = _analytic_taus(section)
    if kind == "p0":
        h = section.get("h")
        h = None if h is None else float(h)
        if h is not None and (not np.isfinite(h) or h < 0):
            raise ConfigError("Hopping rate h must be a non-negative number, got %r" % h)
        try:
            frame = analytic_p0_table(float(section.get("theta", np.pi / 8)), h, taus, exp.gamma)
        except ValueError as e:
            if isinstance(e, QswError):
                raise
            raise ConfigError("Coherent closed form: %s" % e) from e
    elif kind == "p1":
        d = section.get("d")
        d = None if d is None else parse_grid(d)
        frame = analytic_p1_table(exp.make_ensemble(default=asymmetric_pair), d, taus, exp.gamma)
    else:
        raise ConfigError("Unknown analytic comparison %r, expected p0 or p1" % kind)
    max_deviation = float(frame["deviation"].max())
    logger.info("Analytic %s: max deviation %.3g over %i times", kind, max_deviation, len(frame))
    _emit(frame, exp, exp.metadata("analytic", model=ANALYTIC_MODEL, kind=kind, max_deviation="%.3g" % max_deviation))
    return frame


def mc_config(exp: ExperimentConfig) -> McConfig:
    section = dict(exp.robustness)
    section.pop("study", None)
    nominal = section.pop("nominal", None)
    values = {
        "n_runs": int(section.pop("n_runs", 1000)),
        "error_pct": parse_grid(section.pop("error_pct", 0.05)),
        "seed": exp.seed,
        "p_values": parse_grid(section.pop("p", (0.0, 0.1))),
        "tau_values": parse_grid(section.pop("tau", (1.0, 10.0))),
        "model": str(section.pop("model", "2-2-2")),
        "mode": section.pop("mode", NOISE_MULTIPLICATIVE),
        "shared_draw": bool(section.pop("shared_draw", False)),
        "gamma": exp.gamma,
        "optimizer": exp.optimizer,
        "workers": exp.workers,
        "progress": exp.progress,
    }
    if nominal is not None:
        values["nominal"] = tuple(nominal)
    if section:
        raise ConfigError("Unknown robustness setting(s) %s" % sorted(section))
    return McConfig(**values)


def cmd_robustness(exp: ExperimentConfig, params=None):
    study = exp.robustness.get("study", STUDY_STATE_NOISE)
    runners = {STUDY_STATE_NOISE: run_state_noise_study, STUDY_DISORDER: run_disorder_study}
    if study not in runners:
        raise ConfigError("Unknown robustness study %r, expected one of %s" % (study, sorted(runners)))
    config = mc_config(exp)
    tracker = _open_tracker(exp, "robustness", params or {})
    summary = runners[study](config)
    frame = summary.to_frame()
    if tracker is not None:
        for step, cell in enumerate(summary.cells):
            tracker.log_metrics(step, mean=cell.mean, min=cell.min, max=cell.max)
    _emit(frame, exp, exp.metadata("robustness", model=config.model, study=study, mode=config.mode,
                                   n_runs=config.n_runs))
    _close_tracker(tracker, exp)
    return summary


def cmd_depth(exp: ExperimentConfig) -> pd.DataFrame:
    section = exp.depth
    depths = [int(d) for d in parse_grid(section.get("depths", DEPTHS))]
    taus = parse_grid(section.get("tau", TAUS))
    ensemble = exp.make_ensemble(default=default_depth_ensemble)
    frame = run_depth_study(depths, taus, ensemble, p=float(section.get("p", 0.0)), optimizer=exp.optimizer,
                            gamma=exp.gamma, progress=exp.progress)
    if (frame["pc"] > frame["helstrom"] + BOUND_ATOL).any():
        raise NumericalError("Depth study produced P_c above the Helstrom bound")
    _emit(frame, exp, exp.metadata("depth", model="2r-...-2r-2"))
    return frame


def cmd_topo(exp: ExperimentConfig) -> str:
    text = exp.topology().summary() + "\n"
    if exp.out:
        create_folder(os.path.dirname(os.path.abspath(exp.out)))
        with open(exp.out, "w") as f:
            f.write(text)
    else:
        print(text, end="")
    return text


COMMANDS = {
    "sweep": cmd_sweep,
    "bounds": cmd_bounds,
    "analytic": cmd_analytic,
    "robustness": cmd_robustness,
    "depth": cmd_depth,
    "topo": cmd_topo,
}
