"""Optimal discrimination probabilities used as references for the network."""
import logging

import numpy as np

from qswnet.discrimination.states import StateEnsemble
from qswnet.dynamics.density import DensityMatrix
from qswnet.errors import UnsupportedEnsembleError
from qswnet.utils.const import BOUND_HELSTROM, BOUND_SYMMETRIC, EQUIPHASE, MUB_MIXTURE, PRIORS_ATOL

logger = logging.getLogger(__name__)


def _checked(rho):
    state = rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)
    return state.validate()


def _check_priors(p1, p2):
    if p1 < 0 or p2 < 0 or abs(p1 + p2 - 1) > PRIORS_ATOL:
        raise ValueError("Priors must be non-negative and sum to 1, got (%r, %r)" % (p1, p2))


def helstrom_binary(rho1, rho2, p1=0.5, p2=0.5):
    """½(1 + ‖p1·ρ1 − p2·ρ2‖₁), the minimum-error success probability for two states."""
    _check_priors(p1, p2)
    rho1, rho2 = _checked(rho1), _checked(rho2)
    difference = p1 * rho1.rho - p2 * rho2.rho
    trace_norm = np.abs(np.linalg.eigvalsh(0.5 * (difference + difference.conj().T))).sum()
    return float(min(1.0, 0.5 * (1 + trace_norm)))


def helstrom_pure(psi1, psi2, p1=0.5, p2=0.5):
    _check_priors(p1, p2)
    psi1 = np.asarray(psi1, dtype=complex) / np.linalg.norm(psi1)
    psi2 = np.asarray(psi2, dtype=complex) / np.linalg.norm(psi2)
    overlap = abs(np.vdot(psi1, psi2)) ** 2
    return float(0.5 * (1 + np.sqrt(max(0.0, 1 - 4 * p1 * p2 * overlap))))


def classical_helstrom(rho1, rho2, p1=0.5, p2=0.5):
    return helstrom_binary(_checked(rho1).dephased(), _checked(rho2).dephased(), p1, p2)


def ry_zeroed_helstrom(rho1, rho2, p1=0.5, p2=0.5):
    """Helstrom bound once the imaginary part of every coherence has been discarded."""
    return helstrom_binary(_checked(rho1).real_part(), _checked(rho2).real_part(), p1, p2)


def square_root_measurement_pc(ensemble: StateEnsemble):
    weighted = [p * s.rho for p, s in zip(ensemble.priors, ensemble.states)]
    average = sum(weighted)
    values, vectors = np.linalg.eigh(average)
    support = values > 1e-12
    inv_sqrt = vectors[:, support] @ np.diag(values[support] ** -0.5) @ vectors[:, support].conj().T
    pc = 0.0
    for w, state in zip(weighted, ensemble.states):
        element = inv_sqrt @ w @ inv_sqrt
        pc += np.trace(w @ element).real
    return float(pc)


def commuting_optimal_pc(ensemble: StateEnsemble, atol=1e-10):
    """Exact optimum for mutually commuting states: best weighted eigenvalue per common eigenvector."""
    states = [s.rho for s in ensemble.states]
    for i, a in enumerate(states):
        for b in states[i + 1 :]:
            if np.max(np.abs(a @ b - b @ a)) > atol:
                raise UnsupportedEnsembleError("States do not commute; no common eigenbasis")
    generic = sum((k + 1) * p * rho for k, (p, rho) in enumerate(zip(ensemble.priors, states)))
    _, basis = np.linalg.eigh(generic)
    weighted = np.array([p * np.diag(basis.conj().T @ rho @ basis).real for p, rho in zip(ensemble.priors, states)])
    return float(weighted.max(axis=0).sum())


def symmetric_mary_bound(ensemble: StateEnsemble):
    """
    Optimal success probability of the symmetric families.

    Equiphase qubit states are pure and geometrically uniform, where the square-root
    measurement is optimal (2/M for M ≥ 3). MUB mixtures commute and reach α + (1 − α)/M.
    """
    if ensemble.family == EQUIPHASE:
        if ensemble.size == 2:
            return helstrom_binary(ensemble.states[0], ensemble.states[1], *ensemble.priors)
        return square_root_measurement_pc(ensemble)
    if ensemble.family == MUB_MIXTURE:
        return commuting_optimal_pc(ensemble)
    raise UnsupportedEnsembleError("No symmetric bound for ensemble family %r" % ensemble.family)


def ensemble_bound(ensemble: StateEnsemble):
    """Reference bound and its kind: Helstrom for pairs, the symmetric bound otherwise."""
    if ensemble.size == 2:
        return helstrom_binary(ensemble.states[0], ensemble.states[1], *ensemble.priors), BOUND_HELSTROM
    return symmetric_mary_bound(ensemble), BOUND_SYMMETRIC
