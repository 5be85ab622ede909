from dataclasses import dataclass

import numpy as np

from qswnet.errors import InvalidStateError
from qswnet.utils.const import HERMITICITY_ATOL, PSD_ATOL, TRACE_ATOL


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InvalidStateError("A density matrix must be square, got shape %s" % (rho.shape,))
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @classmethod
    def from_ket(cls, ket):
        ket = np.asarray(ket, dtype=complex).ravel()
        norm = np.linalg.norm(ket)
        if norm == 0:
            raise InvalidStateError("Cannot build a state from the zero vector")
        ket = ket / norm
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def maximally_mixed(cls, dim):
        return cls(np.eye(dim) / dim)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.rho, dtype=dtype)

    @property
    def dim(self):
        return self.rho.shape[0]

    @property
    def trace(self):
        return float(np.trace(self.rho).real)

    @property
    def purity(self):
        return float(np.trace(self.rho @ self.rho).real)

    @property
    def hermiticity_error(self):
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    @property
    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))[0])

    def validate(self, herm_atol=HERMITICITY_ATOL, trace_atol=TRACE_ATOL, psd_atol=PSD_ATOL):
        if not np.all(np.isfinite(self.rho)):
            raise InvalidStateError("Density matrix has non-finite entries")
        if self.hermiticity_error > herm_atol:
            raise InvalidStateError("Density matrix is not Hermitian (error %.3g)" % self.hermiticity_error)
        if abs(self.trace - 1) > trace_atol:
            raise InvalidStateError("Density matrix trace is %.12g, expected 1" % self.trace)
        if self.min_eigenvalue < -psd_atol:
            raise InvalidStateError("Density matrix has negative eigenvalue %.3g" % self.min_eigenvalue)
        return self

    def dephased(self):
        return DensityMatrix(np.diag(np.diag(self.rho)))

    def real_part(self):
        """Same state with the imaginary part of every coherence removed (r_y = 0 for a qubit)."""
        return DensityMatrix(self.rho.real)

    def embed(self, n_total):
        if self.dim > n_total:
            raise InvalidStateError("Cannot embed a %i-dimensional state into %i nodes" % (self.dim, n_total))
        full = np.zeros((n_total, n_total), dtype=complex)
        full[: self.dim, : self.dim] = self.rho
        return DensityMatrix(full)

    def allclose(self, other, atol=1e-10):
        return np.allclose(self.rho, np.asarray(other), atol=atol)
