"""Unconstrained coordinates of the (H, T) pair.

H is described by its masked upper-triangle entries. Each column of T is the softmax of
one logit per masked entry of that column, so decoded matrices are always column-stochastic.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import softmax

from qswnet.dynamics.liouvillian import Hamiltonian, TransitionMatrix
from qswnet.errors import ConfigError
from qswnet.network.topology import Topology


@dataclass(frozen=True, eq=False)
class ParameterVector:
    h_free: np.ndarray
    t_logits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "h_free", np.array(self.h_free, dtype=float).ravel())
        object.__setattr__(self, "t_logits", np.array(self.t_logits, dtype=float).ravel())

    def as_array(self):
        return np.concatenate([self.h_free, self.t_logits])


class ParameterLayout:
    def __init__(self, topology: Topology):
        self.topology = topology
        mask = topology.mask
        self.n_network = topology.n_network
        self.h_rows, self.h_cols = np.nonzero(np.triu(mask, 1))
        # column-major walk over the mask: logits of column j are contiguous
        self.t_cols, self.t_rows = np.nonzero(mask.T)
        self.column_bounds = np.concatenate([[0], np.cumsum(mask.sum(axis=0))])

    @property
    def n_h(self):
        return len(self.h_rows)

    @property
    def n_t(self):
        return len(self.t_rows)

    @property
    def size(self):
        return self.n_h + self.n_t

    def split(self, x) -> ParameterVector:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.size,):
            raise ConfigError("Expected %i parameters for %s, got %s" % (self.size, self.topology.name, x.shape))
        return ParameterVector(h_free=x[: self.n_h], t_logits=x[self.n_h :])

    def zeros(self) -> ParameterVector:
        return ParameterVector(np.zeros(self.n_h), np.zeros(self.n_t))

    def random(self, rng) -> ParameterVector:
        return ParameterVector(rng.uniform(-1, 1, self.n_h), rng.uniform(-1, 1, self.n_t))

    def hamiltonian_matrix(self, h_free):
        h = np.zeros((self.n_network, self.n_network))
        h[self.h_rows, self.h_cols] = h_free
        h[self.h_cols, self.h_rows] = h_free
        return h

    def transition_matrix(self, t_logits):
        t = np.zeros((self.n_network, self.n_network))
        values = np.empty(self.n_t)
        for start, stop in zip(self.column_bounds[:-1], self.column_bounds[1:]):
            values[start:stop] = softmax(t_logits[start:stop])
        t[self.t_rows, self.t_cols] = values
        return t

    def decode(self, params: ParameterVector):
        if params.h_free.shape != (self.n_h,) or params.t_logits.shape != (self.n_t,):
            raise ConfigError("Parameter sizes (%i, %i) do not match %s which needs (%i, %i)"
                              % (params.h_free.size, params.t_logits.size, self.topology.name, self.n_h, self.n_t))
        return (Hamiltonian(self.hamiltonian_matrix(params.h_free)),
                TransitionMatrix(self.transition_matrix(params.t_logits)))

    def encode(self, ham: Hamiltonian, trans: TransitionMatrix, floor=1e-12) -> ParameterVector:
        """Coordinates decoding back to (ham, trans); zero rates are floored to ``floor``."""
        h_free = ham.h[self.h_rows, self.h_cols]
        t_logits = np.log(np.maximum(trans.t[self.t_rows, self.t_cols], floor))
        return ParameterVector(h_free, t_logits)


def decode(params: ParameterVector, topology: Topology):
    return ParameterLayout(topology).decode(params)
