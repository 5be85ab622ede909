"""Closed forms of the coherent (p=0) walk on the 2r-2r-2 network.

The optimal Hamiltonian couples each input to both sinkers with equal strength h and one
sign flip. With z² = 1 − 8h², the probability of correct decision reads

    P_c(τ) = (1 + sin 2θ)/2 · [1 − e^{-τ}(f(z) + 1)],
    f(z) = (z sinh zτ + cosh zτ − 1)/z².

For h² > 1/8 the argument is imaginary, z = iξ/τ, and f is evaluated in trigonometric form.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from qswnet.dynamics.liouvillian import Hamiltonian
from qswnet.network.topology import Topology

# |z²|·τ² below which the Taylor series of f replaces the hyperbolic/trigonometric forms
SERIES_THRESHOLD = 1e-4


@dataclass(frozen=True)
class P0Ansatz:
    h: float
    theta: float = np.pi / 8

    @property
    def z_squared(self):
        return 1 - 8 * self.h**2

    def hamiltonian(self):
        """Hopping block over nodes 1-4: inputs (1, 2) against sinkers (3, 4)."""
        h = np.zeros((4, 4))
        h[0, 2] = h[0, 3] = h[1, 2] = self.h
        h[1, 3] = -self.h
        return h + h.T

    def embedded(self, topology: Topology) -> Hamiltonian:
        if topology.name != "2r-2r-2":
            raise ValueError("The coherent ansatz is defined on 2r-2r-2, got %s" % topology.name)
        return Hamiltonian(self.hamiltonian()).check(topology.mask)


def _f(z2, tau):
    if abs(z2) * tau**2 < SERIES_THRESHOLD:
        return tau + tau**2 / 2 + z2 * (tau**3 / 6 + tau**4 / 24) + z2**2 * (tau**5 / 120 + tau**6 / 720)
    if z2 > 0:
        z = np.sqrt(z2)
        return np.sinh(z * tau) / z + 2 * np.sinh(z * tau / 2) ** 2 / z2
    w = np.sqrt(-z2)
    return np.sin(w * tau) / w + 2 * np.sin(w * tau / 2) ** 2 / (-z2)


def remaining_fraction_p0(h, tau):
    """e^{-τ}(f(z) + 1): share of the ideal asymptote not yet absorbed at time τ."""
    if tau < 0:
        raise ValueError("tau must be non-negative, got %r" % tau)
    z2 = 1 - 8 * h**2
    if z2 > 0 and abs(z2) * tau**2 >= SERIES_THRESHOLD and np.sqrt(z2) * tau > 20:
        # exponents combined to avoid overflow of sinh/cosh
        z = np.sqrt(z2)
        grown = 0.5 * ((1 + z) * np.exp(-(1 - z) * tau) + (1 - z) * np.exp(-(1 + z) * tau))
        return float((grown - np.exp(-tau)) / z2 + np.exp(-tau))
    return float(np.exp(-tau) * (_f(z2, tau) + 1))


def pc_p0_closed(theta, h, tau):
    return float((1 + np.sin(2 * theta)) / 2 * (1 - remaining_fraction_p0(h, tau)))


def rho33_p0_closed(theta, h, t):
    """Population of sinker node 3 when the first state of the symmetric pair is injected."""
    z2 = 1 - 8 * h**2
    if abs(z2) * t**2 < SERIES_THRESHOLD:
        shape = t**2 / 4 * (1 + z2 * t**2 / 12 + z2**2 * t**4 / 360)
    elif z2 > 0:
        shape = np.sinh(np.sqrt(z2) * t / 2) ** 2 / z2
    else:
        shape = np.sin(np.sqrt(-z2) * t / 2) ** 2 / (-z2)
    return float(4 * h**2 * np.exp(-t) * shape * (1 + np.sin(2 * theta)))


def xi_objective(xi, tau):
    """f/τ in the trigonometric branch: sin ξ/ξ + τ(1 − cos ξ)/ξ²."""
    return np.sin(xi) / xi + tau * (1 - np.cos(xi)) / xi**2


def optimal_xi_p0(tau):
    if tau <= 0:
        raise ValueError("tau must be positive, got %r" % tau)
    res = minimize_scalar(xi_objective, bounds=(np.pi, 2 * np.pi), args=(tau,), method="bounded",
                          options={"xatol": 1e-12})
    return float(res.x)


def optimal_h_p0(theta, tau):
    """
    Hopping rate minimizing f, i.e. maximizing P_c at time τ.

    The first local minimum of f along ξ lies in [π, 2π] and is the global one; it tends to 2π
    for τ ≫ 1. The angle θ only scales P_c and does not move the optimum.
    """
    xi = optimal_xi_p0(tau)
    return float(np.sqrt((1 + xi**2 / tau**2) / 8))


def ode_matrix_p0(h):
    return np.array([[-2.0, 2 * h, 0.0], [-2 * h, -1.0, h], [0.0, -4 * h, 0.0]])


def fundamental_matrix_p0(h, t):
    """
    Fundamental solution set of the three-variable coherent subsystem.

    Columns solve ẇ = M·w with M = ``ode_matrix_p0(h)``. Complex for 8h² > 1.
    """
    z = np.emath.sqrt(1 - 8 * h**2)
    a = 1 - 4 * h**2
    down, up = np.exp(-z * t), np.exp(z * t)
    w = np.exp(-t) * np.array(
        [
            [2 * h, (a + z) * down, (a - z) * up],
            [1.0, 2 * h * (1 + z) * down, 2 * h * (1 - z) * up],
            [4 * h, 8 * h**2 * down, 8 * h**2 * up],
        ]
    )
    if np.all(np.abs(np.imag(w)) == 0):
        return np.real(w)
    return w


def wronskian_p0(h, t):
    return -16 * h**2 * (1 - 8 * h**2) ** 1.5 * np.exp(-3 * t)


def canonical_pair_rotation(alpha, beta):
    """
    Unitary U on the input qubit with U(α|1⟩ ± β|2⟩) = cos θ|1⟩ ± sin θ|2⟩.

    Returns (θ, U) for complex amplitudes with |α|² + |β|² = 1.
    """
    alpha, beta = complex(alpha), complex(beta)
    norm = np.hypot(abs(alpha), abs(beta))
    if not np.isclose(norm, 1.0):
        raise ValueError("Amplitudes must be normalized, got |α|²+|β|²=%.12g" % norm**2)
    theta = float(np.arctan2(abs(beta), abs(alpha)))
    phase_a = alpha / abs(alpha) if abs(alpha) > 0 else 1.0
    phase_b = beta / abs(beta) if abs(beta) > 0 else 1.0
    rotation = np.diag([np.conj(phase_a), np.conj(phase_b)])
    return theta, rotation


def rotated_ansatz(alpha, beta, h):
    """Network Hamiltonian U†H*U discriminating α|1⟩ ± β|2⟩, with U acting on the inputs only."""
    theta, rotation = canonical_pair_rotation(alpha, beta)
    full = np.eye(4, dtype=complex)
    full[:2, :2] = rotation
    return theta, full.conj().T @ P0Ansatz(h, theta).hamiltonian() @ full
