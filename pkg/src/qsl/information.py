"""Fisher information, classical and quantum.

The classical Fisher information of a POVM measurement on a parametrized
state is F(theta) = sum_j (dp_j/dtheta)^2 / p_j with p_j = Tr[E_j rho(theta)].
Its maximum over measurements, the quantum Fisher information, is evaluated
in the eigenbasis of rho as

    F = (2/hbar^2) sum_jk (p_j - p_k)^2 / (p_j + p_k) |DeltaK_jk|^2

and is bounded by (4/hbar^2) Var(K), with equality on pure states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import config, linalg
from .config import SUPPORT_TOL
from .distances import DensityMatrix, ProbDist, PureState
from .errors import DimMismatch, InvalidPovm, NotPSD, ZeroProbabilityOutcome

POVM_COMPLETENESS_TOL = 1e-10
DEGENERATE_PAIR_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class Povm:
    """Discrete POVM: Hermitian PSD elements resolving the identity."""

    elements: tuple

    def __init__(self, elements: Sequence):
        mats = tuple(linalg.require_hermitian(e, tol=1e-10) for e in elements)
        if not mats:
            raise InvalidPovm("POVM needs at least one element")
        dim = mats[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for m in mats:
            if m.shape[0] != dim:
                raise InvalidPovm("POVM elements have mixed dimensions")
            if np.linalg.eigvalsh(m)[0] < -linalg.EIGENVALUE_CLAMP:
                raise InvalidPovm("POVM element is not PSD")
            total += m
        defect = linalg.frobenius_norm(total - np.eye(dim))
        if defect > POVM_COMPLETENESS_TOL:
            raise InvalidPovm(f"elements sum to identity only within {defect:.3e}")
        object.__setattr__(self, "elements", mats)

    @property
    def dim(self) -> int:
        return int(self.elements[0].shape[0])

    @property
    def n_outcomes(self) -> int:
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian generator with its eigensystem cached at construction."""

    mat: np.ndarray
    spectral: linalg.SpectralDecomposition

    def __init__(self, mat):
        m = linalg.require_hermitian(mat)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "spectral", linalg.eigh(m))

    @property
    def dim(self) -> int:
        return int(self.mat.shape[0])

    @property
    def ground_energy(self) -> float:
        return float(self.spectral.eigenvalues[0])


def _as_observable(k) -> Observable:
    return k if isinstance(k, Observable) else Observable(k)


def _as_density(state) -> DensityMatrix:
    return state.density() if isinstance(state, PureState) else state


def born_probabilities(rho: DensityMatrix, povm: Povm) -> ProbDist:
    """p_j = Tr[E_j rho], clamped against tiny negative round-off."""
    rho = _as_density(rho)
    if povm.dim != rho.dim:
        raise DimMismatch(f"dims {povm.dim} vs {rho.dim}")
    p = np.array([float(np.real(np.trace(e @ rho.mat))) for e in povm.elements])
    if np.any(p < -linalg.EIGENVALUE_CLAMP):
        raise InvalidPovm(f"negative outcome probability {p.min():.3e}")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if abs(total - 1.0) > 1e-10:
        raise InvalidPovm(f"outcome probabilities sum to {total!r}")
    return ProbDist(p / total)


def classical_fisher(
    rho_of_theta: Callable[[float], DensityMatrix],
    povm: Povm,
    theta: float,
    h: float | None = None,
) -> float:
    """Fisher information of the POVM at theta, derivatives by central differences.

    Outcomes whose probability vanishes at theta but varies nearby make the
    information divergent or indeterminate and raise ZeroProbabilityOutcome.
    """
    if h is None:
        h = 1e-5 * max(1.0, abs(theta))
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    p0 = born_probabilities(_as_density(rho_of_theta(theta)), povm).probs
    pp = born_probabilities(_as_density(rho_of_theta(theta + h)), povm).probs
    pm = born_probabilities(_as_density(rho_of_theta(theta - h)), povm).probs
    dp = (pp - pm) / (2.0 * h)
    fisher = 0.0
    for j in range(len(p0)):
        if p0[j] > SUPPORT_TOL:
            fisher += dp[j] ** 2 / p0[j]
        elif abs(dp[j]) > 1e-10 or max(pp[j], pm[j]) > 1e-10:
            raise ZeroProbabilityOutcome(
                f"outcome {j} has vanishing probability but varies with theta"
            )
    return float(fisher)


def qfi(rho: DensityMatrix, k) -> float:
    """Quantum Fisher information of rho for translations generated by K.

    Eigenbasis sum (2/hbar^2) sum_jk (p_j-p_k)^2/(p_j+p_k) |DeltaK_jk|^2;
    pairs without support and degenerate pairs contribute nothing.
    """
    rho = _as_density(rho)
    k = _as_observable(k)
    if k.dim != rho.dim:
        raise DimMismatch(f"dims {k.dim} vs {rho.dim}")
    spec = rho.spectral
    p = np.clip(spec.eigenvalues, 0.0, None)
    v = spec.eigenvectors
    mean = float(np.real(np.trace(rho.mat @ k.mat)))
    dk = v.conj().T @ (k.mat - mean * np.eye(rho.dim)) @ v
    num = (p[:, None] - p[None, :]) ** 2
    denom = p[:, None] + p[None, :]
    keep = (denom > SUPPORT_TOL) & (np.abs(p[:, None] - p[None, :]) > DEGENERATE_PAIR_TOL)
    total = np.sum(num[keep] / denom[keep] * np.abs(dk[keep]) ** 2)
    return float(2.0 * total / config.hbar() ** 2)


def expectation(rho: DensityMatrix, k) -> float:
    rho = _as_density(rho)
    k = _as_observable(k)
    if k.dim != rho.dim:
        raise DimMismatch(f"dims {k.dim} vs {rho.dim}")
    return float(np.real(np.trace(rho.mat @ k.mat)))


def variance(rho: DensityMatrix, k) -> float:
    """<K^2> - <K>^2, clamped at zero against round-off."""
    rho = _as_density(rho)
    k = _as_observable(k)
    if k.dim != rho.dim:
        raise DimMismatch(f"dims {k.dim} vs {rho.dim}")
    second = float(np.real(np.trace(rho.mat @ k.mat @ k.mat)))
    first = float(np.real(np.trace(rho.mat @ k.mat)))
    var = second - first**2
    if var < -linalg.EIGENVALUE_CLAMP:
        raise NotPSD(f"variance {var:.3e} below round-off window")
    return max(var, 0.0)


def qfi_variance_gap(rho: DensityMatrix, k) -> tuple[float, float]:
    """(QFI, variance bound 4 Var(K)/hbar^2); the first never exceeds the second."""
    rho = _as_density(rho)
    k = _as_observable(k)
    return qfi(rho, k), 4.0 * variance(rho, k) / config.hbar() ** 2
