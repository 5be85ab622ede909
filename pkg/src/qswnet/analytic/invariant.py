"""Real coordinates that never feed a sink population."""
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from qswnet.dynamics.liouvillian import (
    Hamiltonian,
    TransitionMatrix,
    build_liouvillian,
    coordinate_labels,
    coordinate_nodes,
    real_block_form,
    real_transform,
    vec,
)
from qswnet.network.topology import Topology
from qswnet.utils.const import DEFAULT_GAMMA

EDGE_ATOL = 1e-12


@dataclass(frozen=True)
class InvariantSubspaceReport:
    trapped_directions: tuple
    sink_reachable: tuple
    input_trapped: tuple
    n_total: int

    def is_trapped(self, label):
        return label in self.trapped_directions

    def trapped_weight(self, rho):
        """Largest |coordinate| of ``rho`` along the trapped directions."""
        if not self.trapped_directions:
            return 0.0
        rho = np.asarray(rho)
        full = np.zeros((self.n_total, self.n_total), dtype=complex)
        full[: rho.shape[0], : rho.shape[0]] = rho
        forward, _ = real_transform(self.n_total)
        coordinates = (forward @ vec(full)).real
        index = {label: i for i, label in enumerate(coordinate_labels(self.n_total))}
        return float(np.max(np.abs(coordinates[[index[label] for label in self.trapped_directions]])))


def invariant_subspace_report(topology: Topology, ham: Hamiltonian, trans: TransitionMatrix, p,
                              gamma=DEFAULT_GAMMA) -> InvariantSubspaceReport:
    """
    Split network coordinates by whether any path of the real generator leads to a sink population.

    An edge j → i exists when coordinate i depends on coordinate j (|𝓛[i, j]| > 1e-12).
    Coordinates involving sink nodes are left out of the verdict.
    """
    form = real_block_form(build_liouvillian(topology, ham, trans, p, gamma))
    depends_on = csr_matrix(np.abs(form.matrix) > EDGE_ATOL)
    index = form.index
    feeding = set()
    for sink in topology.sink_nodes:
        start = index[form.labels[sink]]
        feeding.update(breadth_first_order(depends_on, start, directed=True, return_predecessors=False).tolist())

    sinks = set(topology.sink_nodes)
    inputs = set(topology.input_nodes)
    trapped, reachable, input_trapped = [], [], []
    for i, (label, (m, k)) in enumerate(zip(form.labels, coordinate_nodes(topology.n_total))):
        if m in sinks or k in sinks:
            continue
        if i in feeding:
            reachable.append(label)
        else:
            trapped.append(label)
            if m in inputs and k in inputs:
                input_trapped.append(label)
    return InvariantSubspaceReport(
        trapped_directions=tuple(trapped),
        sink_reachable=tuple(reachable),
        input_trapped=tuple(input_trapped),
        n_total=topology.n_total,
    )
