import logging

import numpy as np
from scipy.linalg import expm

from qswnet.dynamics.density import DensityMatrix
from qswnet.dynamics.liouvillian import Liouvillian, diagonal_indices, unvec, vec
from qswnet.errors import NumericalError
from qswnet.network.topology import Topology

logger = logging.getLogger(__name__)


def propagator(liouvillian: Liouvillian, tau):
    if tau < 0:
        raise ValueError("Evolution time must be non-negative, got %r" % tau)
    if tau == 0:
        return np.eye(liouvillian.l_tilde.shape[0], dtype=complex)
    prop = expm(tau * liouvillian.l_tilde)
    if not np.all(np.isfinite(prop)):
        raise NumericalError("Matrix exponential blew up at tau=%g: the generator is invalid" % tau)
    return prop


def _as_state(rho, n_total):
    state = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    if state.dim != n_total:
        state = state.embed(n_total)
    return state


def evolve(liouvillian: Liouvillian, rho0, tau) -> DensityMatrix:
    return evolve_many(liouvillian, [rho0], tau)[0]


def evolve_many(liouvillian: Liouvillian, states, tau):
    """Evolve several initial states with a single matrix exponential."""
    n = liouvillian.n_total
    states = [_as_state(s, n) for s in states]
    if tau == 0:
        return [DensityMatrix(s.rho.copy()) for s in states]
    columns = np.stack([vec(s.rho) for s in states], axis=1)
    evolved = propagator(liouvillian, tau) @ columns
    return [DensityMatrix(unvec(evolved[:, k], n)) for k in range(len(states))]


def evolve_grid(liouvillian: Liouvillian, rho0, taus):
    """
    States at every time of ``taus`` (any order), stepping through the sorted grid.

    Propagators of repeated increments are computed once, so a uniform grid costs a single
    matrix exponential.
    """
    n = liouvillian.n_total
    taus = np.asarray(taus, dtype=float)
    if np.any(taus < 0):
        raise ValueError("Evolution times must be non-negative")
    order = np.argsort(taus, kind="stable")
    current = vec(_as_state(rho0, n).rho)
    elapsed = 0.0
    steps = {}
    results = [None] * len(taus)
    for k in order:
        delta = taus[k] - elapsed
        if delta > 0:
            key = round(delta, 12)
            if key not in steps:
                steps[key] = propagator(liouvillian, delta)
            current = steps[key] @ current
            elapsed = taus[k]
        results[k] = DensityMatrix(unvec(current, n))
    logger.debug("evolve_grid used %i distinct propagators for %i times", len(steps), len(taus))
    return results


def sink_populations(rho_tau, topology: Topology):
    rho = np.asarray(rho_tau)
    return np.array([rho[s, s].real for s in topology.sink_nodes])


def population_readout_rows(topology: Topology, nodes=None):
    """Indices of ``vec(rho)`` holding the populations of ``nodes`` (default: the sinks)."""
    nodes = topology.sink_nodes if nodes is None else nodes
    return diagonal_indices(topology.n_total)[list(nodes)]
