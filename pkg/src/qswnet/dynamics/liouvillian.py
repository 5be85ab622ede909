"""Vectorized generator of the quantum stochastic walk with sinks.

Density matrices are column-stacked, ``vec(A @ B @ C) = kron(C.T, A) @ vec(B)``, so the
population of node ``i`` sits at index ``i * (n + 1)`` of ``vec(rho)``.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from qswnet.errors import ConfigError, MaskViolationError, NumericalError
from qswnet.network.topology import Topology, classical_transition_from_adjacency
from qswnet.utils.const import DEFAULT_GAMMA, STOCHASTIC_ATOL

logger = logging.getLogger(__name__)


def vec(matrix):
    return np.asarray(matrix).reshape(-1, order="F")


def unvec(vector, n=None):
    vector = np.asarray(vector)
    if n is None:
        n = int(round(np.sqrt(vector.shape[0])))
    return vector.reshape((n, n), order="F")


def diagonal_indices(n):
    return np.arange(n) * (n + 1)


@dataclass(frozen=True, eq=False)
class Hamiltonian:
    h: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise MaskViolationError("Hamiltonian must be square, got shape %s" % (h.shape,))
        h.flags.writeable = False
        object.__setattr__(self, "h", h)

    @classmethod
    def zeros(cls, topology: Topology):
        return cls(np.zeros((topology.n_network, topology.n_network)))

    def check(self, mask, atol=0.0):
        mask = np.asarray(mask, dtype=bool)
        if self.h.shape != mask.shape:
            raise MaskViolationError("Hamiltonian shape %s does not match the network %s" % (self.h.shape, mask.shape))
        if np.max(np.abs(self.h - self.h.T), initial=0.0) > atol:
            raise MaskViolationError("Hamiltonian is not symmetric")
        if np.any(np.abs(np.diag(self.h)) > atol):
            raise MaskViolationError("Hamiltonian has a nonzero diagonal")
        if np.any(np.abs(self.h[~mask]) > atol):
            raise MaskViolationError("Hamiltonian has entries outside the topology mask")
        return self

    def embed(self, n_total):
        full = np.zeros((n_total, n_total))
        n = self.h.shape[0]
        full[:n, :n] = self.h
        return full


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    t: np.ndarray

    def __post_init__(self):
        t = np.array(self.t, dtype=float)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise MaskViolationError("Transition matrix must be square, got shape %s" % (t.shape,))
        t.flags.writeable = False
        object.__setattr__(self, "t", t)

    @classmethod
    def classical(cls, topology: Topology):
        return cls(classical_transition_from_adjacency(topology.mask))

    def check(self, mask, atol=STOCHASTIC_ATOL):
        mask = np.asarray(mask, dtype=bool)
        if self.t.shape != mask.shape:
            raise MaskViolationError("Transition matrix shape %s does not match the network %s"
                                     % (self.t.shape, mask.shape))
        if np.any(self.t < -atol) or np.any(self.t > 1 + atol):
            raise MaskViolationError("Transition rates must lie in [0, 1]")
        if np.any(np.abs(self.t[~mask]) > atol):
            raise MaskViolationError("Transition matrix has entries outside the topology mask")
        column_error = np.max(np.abs(self.t.sum(axis=0) - 1))
        if column_error > 1e3 * atol:
            raise MaskViolationError("Transition matrix is not column-stochastic (error %.3g)" % column_error)
        return self

    def embed(self, n_total):
        full = np.zeros((n_total, n_total))
        n = self.t.shape[0]
        full[:n, :n] = self.t
        return full


@dataclass(frozen=True, eq=False)
class Liouvillian:
    l_tilde: np.ndarray
    p: float
    gamma: float
    n_total: int

    def apply(self, matrix):
        return unvec(self.l_tilde @ vec(matrix), self.n_total)

    def eigenvalues(self):
        return np.linalg.eigvals(self.l_tilde)


def liouvillian_matrix(h_full, t_full, p, gamma=DEFAULT_GAMMA, sink_pairs=()):
    """
    Generator acting on column-stacked density matrices.
    :param h_full: Hermitian hopping matrix over all nodes (real symmetric for network Hamiltonians)
    :param t_full: non-negative transition rates over all nodes, ``t_full[i, j]`` from j to i
    :param p: weight of the incoherent part
    :param gamma: sink rate
    :param sink_pairs: (sinker, sink) node pairs
    :return: complex matrix of size n² × n²
    """
    h_full = np.asarray(h_full)
    t_full = np.asarray(t_full, dtype=float)
    n = h_full.shape[0]
    eye = np.eye(n)
    diag = diagonal_indices(n)

    generator = -1j * (1 - p) * (np.kron(eye, h_full) - np.kron(h_full.T, eye))

    if p:
        generator[np.ix_(diag, diag)] += p * t_full
        outflow = np.diag(t_full.sum(axis=0))
        generator -= 0.5 * p * (np.kron(eye, outflow) + np.kron(outflow, eye))

    for sinker, sink in sink_pairs:
        generator[diag[sink], diag[sinker]] += 2 * gamma
        projector = np.zeros((n, n))
        projector[sinker, sinker] = 1.0
        generator -= gamma * (np.kron(eye, projector) + np.kron(projector, eye))
    return generator


def build_liouvillian(topology: Topology, ham: Hamiltonian, trans: TransitionMatrix, p, gamma=DEFAULT_GAMMA):
    if not 0 <= p <= 1:
        raise ConfigError("Smoothing parameter p must lie in [0, 1], got %r" % p)
    if gamma <= 0:
        raise ConfigError("Sink rate gamma must be positive, got %r" % gamma)
    ham.check(topology.mask)
    trans.check(topology.mask)
    n = topology.n_total
    l_tilde = liouvillian_matrix(ham.embed(n), trans.embed(n), p, gamma, topology.sink_pairs)
    l_tilde.flags.writeable = False
    return Liouvillian(l_tilde=l_tilde, p=float(p), gamma=float(gamma), n_total=n)


def coordinate_nodes(n):
    """Node pair (m, k) behind each real coordinate, in ``coordinate_labels`` order."""
    pairs = [(m, k) for m in range(n) for k in range(m + 1, n)]
    return tuple([(m, m) for m in range(n)] + pairs + pairs)


def coordinate_labels(n):
    """Names of the real coordinates: populations, then real and imaginary coherence parts."""
    nodes = coordinate_nodes(n)
    n_pairs = (len(nodes) - n) // 2
    kinds = ["rho"] * n + ["a"] * n_pairs + ["b"] * n_pairs
    # node labels above 9 need a separator to stay unambiguous
    fmt = "%s%i%i" if n < 10 else "%s%i_%i"
    return tuple(fmt % (kind, m + 1, k + 1) for kind, (m, k) in zip(kinds, nodes))


@lru_cache(maxsize=32)
def real_transform(n):
    """Matrices P and P⁻¹ with r = P·vec(ρ) the real coordinates of ``coordinate_labels(n)``."""
    pairs = [(m, k) for m in range(n) for k in range(m + 1, n)]
    n_pairs = len(pairs)
    size = n * n
    forward = np.zeros((size, size), dtype=complex)
    backward = np.zeros((size, size), dtype=complex)
    for m in range(n):
        forward[m, m * (n + 1)] = 1.0
        backward[m * (n + 1), m] = 1.0
    for q, (m, k) in enumerate(pairs):
        row_a = n + q
        row_b = n + n_pairs + q
        mk = m + k * n
        km = k + m * n
        forward[row_a, mk] = forward[row_a, km] = 0.5
        forward[row_b, mk] = -0.5j
        forward[row_b, km] = 0.5j
        backward[mk, row_a] = backward[km, row_a] = 1.0
        backward[mk, row_b] = 1j
        backward[km, row_b] = -1j
    forward.flags.writeable = False
    backward.flags.writeable = False
    return forward, backward


@dataclass(frozen=True, eq=False)
class RealBlockForm:
    matrix: np.ndarray
    labels: tuple

    @property
    def index(self):
        return {label: i for i, label in enumerate(self.labels)}

    def coordinates(self, rho):
        forward, _ = real_transform(int(round(np.sqrt(self.matrix.shape[0]))))
        return (forward @ vec(np.asarray(rho))).real

    def block(self, labels):
        idx = [self.index[label] for label in labels]
        return self.matrix[np.ix_(idx, idx)]

    def coupling(self, rows, cols):
        index = self.index
        return self.matrix[np.ix_([index[r] for r in rows], [index[c] for c in cols])]


def real_block_form(liouvillian: Liouvillian) -> RealBlockForm:
    n = liouvillian.n_total
    forward, backward = real_transform(n)
    transformed = forward @ liouvillian.l_tilde @ backward
    residue = np.max(np.abs(transformed.imag), initial=0.0)
    scale = max(1.0, np.max(np.abs(liouvillian.l_tilde), initial=0.0))
    if residue > 1e-10 * scale:
        raise NumericalError("Real transform left an imaginary residue of %.3g" % residue)
    return RealBlockForm(matrix=np.ascontiguousarray(transformed.real), labels=coordinate_labels(n))
