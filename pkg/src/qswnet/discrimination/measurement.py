from dataclasses import dataclass

import numpy as np

from qswnet.discrimination.states import StateEnsemble
from qswnet.dynamics.evolution import evolve_many
from qswnet.dynamics.liouvillian import Hamiltonian, Liouvillian, TransitionMatrix, build_liouvillian
from qswnet.errors import UnsupportedEnsembleError
from qswnet.network.topology import Topology
from qswnet.utils.const import DEFAULT_GAMMA


@dataclass(frozen=True)
class MeasurementSetup:
    """Sink projectors |n⟩⟨n| plus the inconclusive projector I − Σ|n⟩⟨n|."""

    n_total: int
    sink_nodes: tuple

    @classmethod
    def from_topology(cls, topology: Topology):
        return cls(n_total=topology.n_total, sink_nodes=topology.sink_nodes)

    @property
    def sink_projectors(self):
        projectors = []
        for node in self.sink_nodes:
            projector = np.zeros((self.n_total, self.n_total))
            projector[node, node] = 1.0
            projectors.append(projector)
        return projectors

    @property
    def inconclusive(self):
        return np.eye(self.n_total) - sum(self.sink_projectors)

    def outcome_probabilities(self, rho):
        """Probability of each sink and of the inconclusive outcome."""
        rho = np.asarray(rho)
        sinks = np.array([rho[n, n].real for n in self.sink_nodes])
        return sinks, float(np.trace(rho).real - sinks.sum())


def check_ensemble_fits(topology: Topology, ensemble: StateEnsemble):
    if ensemble.size > topology.n_sinks:
        raise UnsupportedEnsembleError("%i states cannot be scored on the %i sinks of %s"
                                       % (ensemble.size, topology.n_sinks, topology.name))
    n_inputs = len(topology.input_nodes)
    if ensemble.dim > n_inputs:
        raise UnsupportedEnsembleError("%i-dimensional states do not fit the %i input nodes of %s"
                                       % (ensemble.dim, n_inputs, topology.name))


def detection_matrix(liouvillian: Liouvillian, topology: Topology, ensemble: StateEnsemble, tau):
    """Row m holds the sink populations reached at time tau from state m."""
    check_ensemble_fits(topology, ensemble)
    setup = MeasurementSetup.from_topology(topology)
    evolved = evolve_many(liouvillian, ensemble.states, tau)
    return np.array([setup.outcome_probabilities(rho)[0] for rho in evolved])


def network_pc(topology: Topology, ham: Hamiltonian, trans: TransitionMatrix, p, tau, ensemble: StateEnsemble,
               gamma=DEFAULT_GAMMA):
    """Probability that state m exits at sink m, weighted by the priors."""
    liouvillian = build_liouvillian(topology, ham, trans, p, gamma)
    detection = detection_matrix(liouvillian, topology, ensemble, tau)
    m = np.arange(ensemble.size)
    return float(np.dot(ensemble.priors, detection[m, m]))
