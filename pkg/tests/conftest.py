import numpy as np
import pytest

from qswnet.dynamics.liouvillian import Hamiltonian, TransitionMatrix
from qswnet.network.topology import Topology
from qswnet.optim.parametrization import ParameterLayout


@pytest.fixture
def reduced():
    return Topology.from_model("2r-2r-2")


@pytest.fixture
def full():
    return Topology.from_model("2-2-2")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_network(topology, rng, scale=1.0):
    """Random mask-conforming (H, T) pair."""
    layout = ParameterLayout(topology)
    params = layout.random(rng)
    h = layout.hamiltonian_matrix(scale * params.h_free)
    t = layout.transition_matrix(2 * params.t_logits)
    return Hamiltonian(h), TransitionMatrix(t)


def random_qubit(rng, max_radius=0.95):
    """Random qubit density matrix with Bloch radius below ``max_radius``."""
    from qswnet.discrimination.states import BlochVector

    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    radius = max_radius * rng.uniform()
    return BlochVector(*(radius * direction)).to_density()
