"""Closed forms of the classical (p=1) walk on the 2r-2r-2 network.

The transition matrix is parameterized by four biases d_k ∈ [-1/2, 1/2]:

    T = [[0, 0, ½+d1, ½−d2],
         [0, 0, ½−d1, ½+d2],
         [½+d3, ½−d4, 0, 0],
         [½−d3, ½+d4, 0, 0]]

Only populations evolve. With w = ρ33 + ρ44 = e^{-2t} sinh(√2 t)/√2 independent of T, the
difference ε = ρ33 − ρ44 follows a forced 2×2 system whose homogeneous part has rates
−2 ± k, k = √(1 + s12·s34), s12 = d1 + d2, s34 = d3 + d4. The initial state only enters through
Δρ = (ρ22 − ρ11)/2.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import exprel

from qswnet.dynamics.liouvillian import TransitionMatrix
from qswnet.network.topology import Topology

SQRT2 = np.sqrt(2.0)
# below this k the sinh(kt)/k kernels switch to their k → 0 series
SMALL_K = 1e-5
# growth rates ±√2 of w and of its companion u = ẇ + 3w, with weights (w, u)
_MODES = (
    (SQRT2, 1 / (2 * SQRT2), (1 + SQRT2) / (2 * SQRT2)),
    (-SQRT2, -1 / (2 * SQRT2), (SQRT2 - 1) / (2 * SQRT2)),
)


@dataclass(frozen=True)
class P1Params:
    d1: float
    d2: float
    d3: float
    d4: float

    def __post_init__(self):
        for name in ("d1", "d2", "d3", "d4"):
            if abs(getattr(self, name)) > 0.5 + 1e-12:
                raise ValueError("%s=%r lies outside [-1/2, 1/2]" % (name, getattr(self, name)))

    @classmethod
    def uniform(cls, value):
        return cls(value, value, value, value)

    @classmethod
    def random(cls, rng):
        return cls(*rng.uniform(-0.5, 0.5, 4))

    @property
    def s12(self):
        return self.d1 + self.d2

    @property
    def s34(self):
        return self.d3 + self.d4

    @property
    def k(self):
        return float(np.sqrt(1 + self.s12 * self.s34))

    def transition_matrix(self):
        d1, d2, d3, d4 = self.d1, self.d2, self.d3, self.d4
        return np.array(
            [
                [0, 0, 0.5 + d1, 0.5 - d2],
                [0, 0, 0.5 - d1, 0.5 + d2],
                [0.5 + d3, 0.5 - d4, 0, 0],
                [0.5 - d3, 0.5 + d4, 0, 0],
            ]
        )

    def embedded(self, topology: Topology) -> TransitionMatrix:
        if topology.name != "2r-2r-2":
            raise ValueError("The biased classical walk is defined on 2r-2r-2, got %s" % topology.name)
        return TransitionMatrix(self.transition_matrix()).check(topology.mask)


def delta_rho(rho):
    rho = np.asarray(rho)
    return float((rho[1, 1].real - rho[0, 0].real) / 2)


def _decay_integral(k, tau):
    """∫₀^τ e^{-2t} sinh(kt)/k dt."""
    if k < SMALL_K:
        e2 = np.exp(-2 * tau)
        linear = (1 - e2 * (1 + 2 * tau)) / 4
        cubic = 3 / 8 * (1 - e2 * (1 + 2 * tau + 2 * tau**2 + 4 * tau**3 / 3))
        return linear + k**2 / 6 * cubic
    slow = -np.expm1(-(2 - k) * tau) / (2 - k)
    fast = -np.expm1(-(2 + k) * tau) / (2 + k)
    return (slow - fast) / (2 * k)


def pc_p1_closed(delta_rho_1, delta_rho_2, params: P1Params, tau):
    if tau < 0:
        raise ValueError("tau must be non-negative, got %r" % tau)
    transient = ((SQRT2 - 1) * np.exp(-(2 + SQRT2) * tau) - (SQRT2 + 1) * np.exp(-(2 - SQRT2) * tau)) / 4
    bias = params.s34 * (delta_rho_2 - delta_rho_1) * _decay_integral(params.k, tau)
    return float(0.5 + transient + bias)


def pc_p1_asymptote(delta_rho_1, delta_rho_2):
    return 0.5 * (1 + abs(delta_rho_2 - delta_rho_1))


def _shifted(mu, a, t):
    """∫₀^t e^{a(t−s)} e^{μs} ds, regular when μ = a."""
    return t * np.exp(a * t) * exprel((mu - a) * t)


def _sinker_difference(delta, params: P1Params, t):
    """ε(t) = ρ33 − ρ44 for a state with Δρ = delta injected at t = 0."""
    k = params.k
    s34 = params.s34
    delta0 = -2 * delta
    if k < SMALL_K:
        free = t
    else:
        free = np.sinh(k * t) / k
    total = s34 * delta0 * free
    for mu, weight_w, weight_u in _MODES:
        forcing_w = (params.d1 - params.d2) * weight_w
        forcing_u = (params.d3 - params.d4) * weight_u
        cosh_part = 0.5 * (_shifted(mu, k, t) + _shifted(mu, -k, t))
        if k < SMALL_K:
            sinh_part = (np.exp(mu * t) - 1 - mu * t) / mu**2
        else:
            sinh_part = (_shifted(mu, k, t) - _shifted(mu, -k, t)) / (2 * k)
        total += forcing_u * cosh_part + (s34 * forcing_w - forcing_u) * sinh_part
    return np.exp(-2 * t) * total


def sinker_total(t):
    return np.exp(-2 * t) * np.sinh(SQRT2 * t) / SQRT2


def rho33_p1_closed(delta, params: P1Params, t):
    return float((sinker_total(t) + _sinker_difference(delta, params, t)) / 2)


def rho44_p1_closed(delta, params: P1Params, t):
    return float((sinker_total(t) - _sinker_difference(delta, params, t)) / 2)


def optimal_params_p1(delta_rho_1, delta_rho_2) -> P1Params:
    gap = delta_rho_2 - delta_rho_1
    if gap == 0:
        raise ValueError("Degenerate problem: equal Δρ makes every transition matrix optimal")
    return P1Params.uniform(0.5 * np.sign(gap))


def optimal_t_p1(delta_rho_1, delta_rho_2) -> TransitionMatrix:
    return TransitionMatrix(optimal_params_p1(delta_rho_1, delta_rho_2).transition_matrix())
