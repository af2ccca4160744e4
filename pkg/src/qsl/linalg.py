"""Dense complex matrix kernel.

Hermitian eigendecomposition, unitary exponentials, PSD square roots, and the
small operator algebra (trace, commutators, tensor products) everything else
is built on. Multi-qubit tensor products put qubit 0 in the most significant
position, i.e. kron(a, b) places `a` on qubit 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import config
from .errors import ConvergenceFailure, NotHermitian, NotPSD

HERMITICITY_TOL = 1e-12
EIGENVALUE_CLAMP = 1e-12


def as_square_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def adjoint(m) -> np.ndarray:
    return np.asarray(m).conj().T


def trace(m) -> complex:
    return complex(np.trace(np.asarray(m)))


def matmul(a, b) -> np.ndarray:
    return np.asarray(a) @ np.asarray(b)


def commutator(a, b) -> np.ndarray:
    """[A, B] = AB - BA."""
    a, b = np.asarray(a), np.asarray(b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """{A, B} = AB + BA."""
    a, b = np.asarray(a), np.asarray(b)
    return a @ b + b @ a


def kron(*ops) -> np.ndarray:
    """Tensor product; leftmost factor is the most significant (qubit 0)."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, (np.asarray(o, dtype=complex) for o in ops))


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def hermiticity_defect(m) -> float:
    """Frobenius distance to the adjoint, relative to the matrix scale."""
    a = np.asarray(m)
    scale = max(frobenius_norm(a), 1.0)
    return frobenius_norm(a - adjoint(a)) / scale


def require_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    a = as_square_matrix(m)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitian(
            f"relative Hermiticity defect {defect:.3e} exceeds {tol:.1e}"
        )
    return a


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigensystem of a Hermitian matrix, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eigh(m) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    a = require_hermitian(m)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigh did not converge: {exc}") from exc
    return SpectralDecomposition(w, v)


def expm_unitary(k, angle: float) -> np.ndarray:
    """exp(-i K angle / hbar) for Hermitian K, via eigendecomposition."""
    spec = eigh(k)
    phases = np.exp(-1j * spec.eigenvalues * angle / config.hbar())
    v = spec.eigenvectors
    return (v * phases) @ v.conj().T


def psd_sqrt(m) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix.

    Eigenvalues in [-EIGENVALUE_CLAMP, 0) are clamped to zero; anything more
    negative raises NotPSD.
    """
    spec = eigh(m)
    w = spec.eigenvalues
    if w[0] < -EIGENVALUE_CLAMP:
        raise NotPSD(f"eigenvalue {w[0]:.3e} below -{EIGENVALUE_CLAMP:.1e}")
    w = np.clip(w, 0.0, None)
    v = spec.eigenvectors
    return (v * np.sqrt(w)) @ v.conj().T
