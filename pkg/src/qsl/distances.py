"""Classical and quantum statistical distances.

Covers the simplex metric ds^2 = sum dp_j^2 / p_j, its finite geodesic on the
probability-amplitude sphere, the Wootters angle between pure states, the
raising/lowering superoperators that act as the metric on density matrices,
the induced infinitesimal quantum distance Tr[drho L_rho(drho)], Uhlmann
fidelity and the Bures angle.

Two angle conventions coexist: the Wootters angle puts orthogonal states at
pi/2, the Fisher-information normalization puts them at pi (exactly twice the
Wootters value). DistanceConvention makes the factor explicit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .config import SUPPORT_TOL
from .errors import (
    DimMismatch,
    DivergentDirection,
    LengthMismatch,
    NotPSD,
    OffSimplexTangent,
    OutsideSupport,
)

TANGENT_SUM_TOL = 1e-10
OFF_SUPPORT_WEIGHT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Point on the probability simplex."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.shape[0] < 2:
            raise ValueError("need a 1-d probability vector of length >= 2")
        if np.any(p < -1e-15):
            raise ValueError(f"negative probability: min entry {p.min():.3e}")
        total = p.sum()
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", np.clip(p, 0.0, None))

    @property
    def n(self) -> int:
        return int(self.probs.shape[0])


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector of complex amplitudes."""

    amps: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amps, dtype=complex)
        if a.ndim != 1 or a.shape[0] < 1:
            raise ValueError("need a 1-d amplitude vector")
        norm = float(np.linalg.norm(a))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state norm {norm!r} is not 1")
        object.__setattr__(self, "amps", a)

    @property
    def dim(self) -> int:
        return int(self.amps.shape[0])

    @classmethod
    def computational(cls, dim: int, index: int) -> "PureState":
        a = np.zeros(dim, dtype=complex)
        a[index] = 1.0
        return cls(a)

    @classmethod
    def plus(cls) -> "PureState":
        return cls(np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0))

    @classmethod
    def minus(cls) -> "PureState":
        return cls(np.array([1.0, -1.0], dtype=complex) / np.sqrt(2.0))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(np.outer(self.amps, self.amps.conj()), validate=False)


@dataclass(frozen=True, init=False, eq=False)
class DensityMatrix:
    """Hermitian, PSD, unit-trace operator."""

    mat: np.ndarray

    def __init__(self, mat, validate: bool = True):
        a = linalg.as_square_matrix(mat)
        if validate:
            a = linalg.require_hermitian(a)
            tr = np.trace(a)
            if abs(tr - 1.0) > 1e-12:
                raise ValueError(f"trace {tr!r} is not 1")
            w = np.linalg.eigvalsh(a)
            if w[0] < -linalg.EIGENVALUE_CLAMP:
                raise NotPSD(f"eigenvalue {w[0]:.3e} below the clamp window")
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return int(self.mat.shape[0])

    @cached_property
    def spectral(self) -> linalg.SpectralDecomposition:
        return linalg.eigh(self.mat)

    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim, validate=False)


class DistanceConvention(enum.Enum):
    WOOTTERS_ANGLE = "wootters"
    FISHER_ANGLE = "fisher"

    @property
    def scale(self) -> float:
        """Multiple of the Wootters angle this convention reports."""
        return 2.0 if self is DistanceConvention.FISHER_ANGLE else 1.0


def classical_infinitesimal_distance_sq(p: ProbDist, dp) -> float:
    """ds^2 = sum_j dp_j^2 / p_j over the support of p.

    dp must be tangent to the simplex (components sum to zero) and must not
    place weight where p vanishes, since the metric diverges there.
    """
    d = np.asarray(dp, dtype=float)
    if d.shape != p.probs.shape:
        raise LengthMismatch(f"tangent length {d.shape} vs {p.probs.shape}")
    if abs(d.sum()) > TANGENT_SUM_TOL:
        raise OffSimplexTangent(f"tangent components sum to {d.sum():.3e}")
    off = p.probs <= SUPPORT_TOL
    if np.any(np.abs(d[off]) > SUPPORT_TOL):
        raise DivergentDirection("tangent has weight on a zero-probability outcome")
    on = ~off
    return float(np.sum(d[on] ** 2 / p.probs[on]))


def classical_geodesic_distance(p: ProbDist, q: ProbDist) -> float:
    """Geodesic length induced by the simplex metric: 2 arccos(sum_j sqrt(p_j q_j)).

    Embedding p_j = r_j^2 maps the metric onto (four times) the Euclidean
    sphere metric for the amplitudes r, so the geodesic is twice the angle
    between the amplitude vectors. Ranges over [0, pi].
    """
    if p.n != q.n:
        raise LengthMismatch(f"lengths {p.n} vs {q.n}")
    overlap = float(np.sum(np.sqrt(p.probs * q.probs)))
    return 2.0 * float(np.arccos(np.clip(overlap, -1.0, 1.0)))


def raising_superop(rho: DensityMatrix, b) -> np.ndarray:
    """R_rho(B) = (1/2){rho, B}."""
    bm = linalg.require_hermitian(b)
    if bm.shape[0] != rho.dim:
        raise DimMismatch(f"dims {bm.shape[0]} vs {rho.dim}")
    return 0.5 * linalg.anticommutator(rho.mat, bm)


def _support_decomposed(rho: DensityMatrix, b, support_tol: float):
    """B in the eigenbasis of rho plus the off-support mask; rejects weight
    where p_j + p_k vanishes."""
    bm = linalg.require_hermitian(b)
    if bm.shape[0] != rho.dim:
        raise DimMismatch(f"dims {bm.shape[0]} vs {rho.dim}")
    spec = rho.spectral
    p = np.clip(spec.eigenvalues, 0.0, None)
    v = spec.eigenvectors
    bt = v.conj().T @ bm @ v
    denom = p[:, None] + p[None, :]
    off = denom <= support_tol
    if np.any(np.abs(bt[off]) > OFF_SUPPORT_WEIGHT_TOL):
        worst = float(np.max(np.abs(bt[off])))
        raise OutsideSupport(
            f"operator weight {worst:.3e} outside the support of rho"
        )
    return bt, denom, off, v


def lowering_superop(rho: DensityMatrix, b, support_tol: float = SUPPORT_TOL) -> np.ndarray:
    """L_rho(B) = R_rho^{-1}(B), entries 2 B_jk / (p_j + p_k) on the support."""
    bt, denom, off, v = _support_decomposed(rho, b, support_tol)
    lt = np.zeros_like(bt)
    on = ~off
    lt[on] = 2.0 * bt[on] / denom[on]
    return v @ lt @ v.conj().T


def quantum_infinitesimal_distance_sq(
    rho: DensityMatrix, drho, support_tol: float = SUPPORT_TOL
) -> float:
    """ds^2 = Tr[drho L_rho(drho)] = sum_jk 2 |drho_jk|^2 / (p_j + p_k)."""
    dm = np.asarray(drho, dtype=complex)
    tr = np.trace(dm)
    if abs(tr) > TANGENT_SUM_TOL:
        raise ValueError(f"tangent must be traceless, got trace {tr!r}")
    bt, denom, off, _ = _support_decomposed(rho, dm, support_tol)
    on = ~off
    return float(np.sum(2.0 * np.abs(bt[on]) ** 2 / denom[on]))


def wootters_distance(psi: PureState, phi: PureState) -> float:
    """Angle between pure states: arccos |<psi|phi>|, in [0, pi/2]."""
    if psi.dim != phi.dim:
        raise DimMismatch(f"dims {psi.dim} vs {phi.dim}")
    overlap = abs(np.vdot(psi.amps, phi.amps))
    return float(np.arccos(np.clip(overlap, 0.0, 1.0)))


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2, in [0, 1].

    Interpreted as the probability of mistaking one state for the other in a
    single-shot measurement; reduces to |<psi|phi>|^2 on pure states.
    """
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dims {rho.dim} vs {sigma.dim}")
    r = linalg.psd_sqrt(rho.mat)
    inner = r @ sigma.mat @ r
    value = float(np.real(np.trace(linalg.psd_sqrt(inner)))) ** 2
    return float(np.clip(value, 0.0, 1.0))


def sqrt_fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Tr sqrt(sqrt(rho) sigma sqrt(rho)), the square root of the fidelity."""
    if rho.dim != sigma.dim:
        raise DimMismatch(f"dims {rho.dim} vs {sigma.dim}")
    r = linalg.psd_sqrt(rho.mat)
    inner = r @ sigma.mat @ r
    return float(np.clip(np.real(np.trace(linalg.psd_sqrt(inner))), 0.0, 1.0))


def bures_angle(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    convention: DistanceConvention = DistanceConvention.WOOTTERS_ANGLE,
) -> float:
    """arccos sqrt(F(rho, sigma)), scaled by the chosen convention.

    Coincides with the Wootters distance on pure states (Wootters mode)."""
    root = sqrt_fidelity(rho, sigma)
    return convention.scale * float(np.arccos(root))
