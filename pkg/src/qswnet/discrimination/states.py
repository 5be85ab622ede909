"""Input state ensembles.

Qubit states live on input nodes 1 and 2. Pair conventions:

    |ψ1⟩ = cos θ|1⟩ + e^{-iξ} sin θ|2⟩,   |ψ2⟩ = cos θ|1⟩ − e^{-iξ} sin θ|2⟩
"""
from dataclasses import dataclass, field

import numpy as np

from qswnet.dynamics.density import DensityMatrix
from qswnet.errors import InvalidStateError, UnsupportedEnsembleError
from qswnet.utils.const import (
    ASYMMETRIC_PAIR,
    ASYMMETRIC_PAIR_ALIAS,
    EQUIPHASE,
    MIXED_PAIR,
    MUB_MIXTURE,
    PRIORS_ATOL,
    PURE_VS_MIXED,
    SYMMETRIC_PAIR,
)
from qswnet.utils.misc import call_with_filtered_kwargs, unused_kwargs

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        if self.radius > 1 + 1e-12:
            raise InvalidStateError("Bloch vector radius %.12g exceeds 1" % self.radius)

    @classmethod
    def from_density(cls, rho):
        rho = np.asarray(rho)
        if rho.shape != (2, 2):
            raise InvalidStateError("Bloch vectors describe qubit states only, got shape %s" % (rho.shape,))
        return cls(
            rx=float(np.trace(rho @ PAULI_X).real),
            ry=float(np.trace(rho @ PAULI_Y).real),
            rz=float(np.trace(rho @ PAULI_Z).real),
        )

    @property
    def radius(self):
        return float(np.sqrt(self.rx**2 + self.ry**2 + self.rz**2))

    def as_array(self):
        return np.array([self.rx, self.ry, self.rz])

    def to_density(self) -> DensityMatrix:
        return DensityMatrix(0.5 * (np.eye(2) + self.rx * PAULI_X + self.ry * PAULI_Y + self.rz * PAULI_Z))


@dataclass(frozen=True, eq=False)
class StateEnsemble:
    states: tuple
    priors: np.ndarray
    family: str = None
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        states = tuple(s if isinstance(s, DensityMatrix) else DensityMatrix(s) for s in self.states)
        if not states:
            raise InvalidStateError("An ensemble needs at least one state")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise InvalidStateError("All states of an ensemble must share a dimension, got %s" % sorted(dims))
        for s in states:
            s.validate()
        priors = np.array(self.priors, dtype=float)
        if priors.shape != (len(states),):
            raise InvalidStateError("Expected %i priors, got %s" % (len(states), priors.shape))
        if np.any(priors < 0) or abs(priors.sum() - 1) > PRIORS_ATOL:
            raise InvalidStateError("Priors must be non-negative and sum to 1, got %s" % priors)
        priors.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", priors)

    @classmethod
    def uniform(cls, states, family=None, **parameters):
        return cls(states=tuple(states), priors=np.full(len(states), 1 / len(states)), family=family,
                   parameters=parameters)

    @property
    def size(self):
        return len(self.states)

    @property
    def dim(self):
        return self.states[0].dim

    def __len__(self):
        return self.size

    def relabeled(self, order):
        order = list(order)
        return StateEnsemble(tuple(self.states[k] for k in order), self.priors[order], family=self.family,
                             parameters=dict(self.parameters))


def _pair_kets(theta, xi):
    amplitude = np.exp(-1j * xi) * np.sin(theta)
    return np.array([np.cos(theta), amplitude]), np.array([np.cos(theta), -amplitude])


def symmetric_pure_pair(theta, xi=0.0) -> StateEnsemble:
    ket1, ket2 = _pair_kets(theta, xi)
    return StateEnsemble.uniform([DensityMatrix.from_ket(ket1), DensityMatrix.from_ket(ket2)],
                                 family=SYMMETRIC_PAIR, theta=theta, xi=xi)


def bloch_shrink(rho, radius) -> DensityMatrix:
    if not 0 <= radius <= 1:
        raise InvalidStateError("Bloch radius must lie in [0, 1], got %r" % radius)
    bloch = BlochVector.from_density(rho)
    if bloch.radius == 0:
        if radius > 0:
            raise InvalidStateError("The maximally mixed state has no Bloch direction to stretch")
        return bloch.to_density()
    scale = radius / bloch.radius
    return BlochVector(bloch.rx * scale, bloch.ry * scale, bloch.rz * scale).to_density()


def asymmetric_pair(theta=np.pi / 8, xi=np.pi / 4, r=0.5) -> StateEnsemble:
    """Pure state against a mixed state, both with an r_y component when ξ ∉ {0, π}."""
    ket1, _ = _pair_kets(theta, xi)
    s2t, c2t = np.sin(2 * theta), np.cos(2 * theta)
    mixed = BlochVector(-r * np.cos(xi) * s2t, r * np.sin(xi) * s2t, r * c2t).to_density()
    return StateEnsemble.uniform([DensityMatrix.from_ket(ket1), mixed], family=ASYMMETRIC_PAIR,
                                 theta=theta, xi=xi, r=r)


def pure_vs_mixed_pair(theta=np.pi / 8, xi=np.pi / 2, radius=0.5) -> StateEnsemble:
    ket1, ket2 = _pair_kets(theta, xi)
    mixed = bloch_shrink(DensityMatrix.from_ket(ket2), radius)
    return StateEnsemble.uniform([DensityMatrix.from_ket(ket1), mixed], family=PURE_VS_MIXED,
                                 theta=theta, xi=xi, radius=radius)


def mixed_pair(theta=np.pi / 8, xi=0.0, radius=0.5) -> StateEnsemble:
    kets = _pair_kets(theta, xi)
    states = [bloch_shrink(DensityMatrix.from_ket(k), radius) for k in kets]
    return StateEnsemble.uniform(states, family=MIXED_PAIR, theta=theta, xi=xi, radius=radius)


def equiphase_states(m_states) -> StateEnsemble:
    m_states = int(m_states)
    if m_states < 2:
        raise InvalidStateError("Equiphase ensembles need at least 2 states, got %i" % m_states)
    phases = np.exp(2j * np.pi * np.arange(1, m_states + 1) / m_states)
    states = [DensityMatrix.from_ket([1, phase]) for phase in phases]
    return StateEnsemble.uniform(states, family=EQUIPHASE, m_states=m_states)


def fourier_basis(m_states):
    k = np.arange(m_states)
    return np.exp(-2j * np.pi * np.outer(k, k) / m_states) / np.sqrt(m_states)


def mub_mixture(alpha, m_states) -> StateEnsemble:
    m_states = int(m_states)
    if not 0 <= alpha <= 1:
        raise InvalidStateError("Mixing weight alpha must lie in [0, 1], got %r" % alpha)
    basis = fourier_basis(m_states)
    noise = np.eye(m_states) / m_states
    states = [DensityMatrix(alpha * np.outer(basis[m], basis[m].conj()) + (1 - alpha) * noise) for m in range(m_states)]
    return StateEnsemble.uniform(states, family=MUB_MIXTURE, alpha=alpha, m_states=m_states)


SUPPORTED_ENSEMBLES = {
    SYMMETRIC_PAIR: symmetric_pure_pair,
    ASYMMETRIC_PAIR: asymmetric_pair,
    ASYMMETRIC_PAIR_ALIAS: asymmetric_pair,
    PURE_VS_MIXED: pure_vs_mixed_pair,
    MIXED_PAIR: mixed_pair,
    EQUIPHASE: equiphase_states,
    MUB_MIXTURE: mub_mixture,
}


def register_ensemble(key, value):
    global SUPPORTED_ENSEMBLES
    SUPPORTED_ENSEMBLES[key] = value


def make_ensemble(family, **parameters) -> StateEnsemble:
    if family not in SUPPORTED_ENSEMBLES:
        raise UnsupportedEnsembleError("Unknown ensemble family %r, expected one of %s"
                                       % (family, sorted(SUPPORTED_ENSEMBLES)))
    factory = SUPPORTED_ENSEMBLES[family]
    unknown = unused_kwargs(factory, parameters)
    if unknown:
        raise UnsupportedEnsembleError("Ensemble %r does not accept parameter(s) %s" % (family, unknown))
    return call_with_filtered_kwargs(factory, parameters)
