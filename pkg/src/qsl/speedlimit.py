"""Unitary evolution engine and speed-limit bound verification.

For a state evolving under exp(-i K theta / hbar), the time to reach an
orthogonal state obeys two lower bounds:

  Mandelstam-Tamm   theta >= (pi/2) hbar / sqrt(Var K)
  Margolus-Levitin  theta >= (pi/2) hbar / <K - E_ground>

The module locates orthogonality times numerically (coarse scan plus
golden-section refinement of fidelity minima), computes both bounds, and
samples the Wootters-angle rate along orbits to confirm it never exceeds
sqrt(Var K)/hbar. The mean-energy *rate* comparison is recorded for
inspection but not enforced: only the integrated orthogonality-time form of
the mean-energy bound is a theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import config
from .distances import (
    DensityMatrix,
    DistanceConvention,
    PureState,
    sqrt_fidelity,
)
from .errors import DegenerateWithGround, DimMismatch, IndexOutOfRange, ViolationDetected
from .information import Observable, _as_observable, expectation, variance

State = PureState | DensityMatrix

DEFAULT_SAMPLES = 2048
DEFAULT_EPS = 1e-9
ZERO_SCALE_TOL = 1e-12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True, eq=False)
class EvolutionScenario:
    """A state, a Hermitian generator, and the scan window for the orbit."""

    initial: State
    generator: Observable
    theta_max: float
    samples: int = DEFAULT_SAMPLES

    def __post_init__(self):
        gen = _as_observable(self.generator)
        object.__setattr__(self, "generator", gen)
        if self.initial.dim != gen.dim:
            raise DimMismatch(f"dims {self.initial.dim} vs {gen.dim}")
        if not self.theta_max > 0:
            raise ValueError(f"theta_max must be positive, got {self.theta_max!r}")
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples!r}")


@dataclass(frozen=True)
class BoundReport:
    """Orthogonality time versus both speed-limit bounds for one scenario."""

    orthogonality_theta: float | None
    mt_bound: float
    ml_bound_ground_referenced: float
    ml_bound_raw: float
    attained_distance: float
    convention: DistanceConvention


@dataclass(frozen=True, eq=False)
class RateReport:
    """Sampled Wootters-angle rates along an orbit against both rate limits.

    mean-energy excursions (rate above the ground-referenced mean) are legal
    for skewed superpositions and are listed, not raised."""

    thetas: np.ndarray
    rates: np.ndarray
    mt_rate_limit: float
    ml_rate_limit: float
    max_rate: float
    ml_excursions: tuple = field(default_factory=tuple)


def evolve(state: State, k, theta: float) -> State:
    """Apply exp(-i K theta / hbar); pure states stay pure, spectra are kept."""
    k = _as_observable(k)
    if state.dim != k.dim:
        raise DimMismatch(f"dims {state.dim} vs {k.dim}")
    spec = k.spectral
    phases = np.exp(-1j * spec.eigenvalues * theta / config.hbar())
    u = (spec.eigenvectors * phases) @ spec.eigenvectors.conj().T
    if isinstance(state, PureState):
        return PureState(u @ state.amps)
    return DensityMatrix(u @ state.mat @ u.conj().T, validate=False)


def mandelstam_tamm_bound(state: State, k) -> float:
    """(pi/2) hbar / sqrt(Var K); +inf for eigenstates, which never evolve."""
    spread = math.sqrt(variance(state, k))
    if spread <= ZERO_SCALE_TOL:
        return math.inf
    return 0.5 * math.pi * config.hbar() / spread


def margolus_levitin_bound(state: State, k, ground_referenced: bool = True) -> float:
    """(pi/2) hbar / <K - E_ground>, or the shift-sensitive (pi/2) hbar / |<K>|.

    The ground-referenced form measures energy from the bottom of the
    spectrum and is invariant under K -> K + c; it is the variant with
    theorem status. +inf when the mean vanishes (ground eigenstates)."""
    k = _as_observable(k)
    mean = expectation(state, k)
    if ground_referenced:
        mean -= k.ground_energy
    else:
        mean = abs(mean)
    if mean <= ZERO_SCALE_TOL:
        return math.inf
    return 0.5 * math.pi * config.hbar() / mean


def _golden_minimize(f, a: float, b: float, rel_tol: float = 1e-12):
    """Golden-section minimum of f on [a, b] to relative width rel_tol."""
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    limit = max(rel_tol * max(abs(a), abs(b)), 1e-18)
    while (b - a) > limit:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        limit = max(rel_tol * max(abs(a), abs(b)), 1e-18)
    x = 0.5 * (a + b)
    return x, f(x)


def _sqrt_fidelity_functions(scenario: EvolutionScenario):
    """(scalar, grid) evaluators of sqrt F(state_0, state_theta) along the orbit."""
    k = scenario.generator
    hbar = config.hbar()
    if isinstance(scenario.initial, PureState):
        lam = k.spectral.eigenvalues
        weights = np.abs(k.spectral.eigenvectors.conj().T @ scenario.initial.amps) ** 2

        def grid(thetas: np.ndarray) -> np.ndarray:
            phases = np.exp(-1j * np.outer(thetas, lam) / hbar)
            return np.abs(phases @ weights)

        def scalar(theta: float) -> float:
            return float(abs(np.sum(weights * np.exp(-1j * lam * theta / hbar))))

        return scalar, grid

    rho0 = scenario.initial

    def scalar(theta: float) -> float:
        return sqrt_fidelity(rho0, evolve(rho0, k, theta))

    def grid(thetas: np.ndarray) -> np.ndarray:
        return np.array([scalar(t) for t in thetas])

    return scalar, grid


def orthogonality_time(scenario: EvolutionScenario, eps: float = DEFAULT_EPS) -> float | None:
    """Smallest theta in (0, theta_max] where the fidelity to the initial
    state drops to eps or below; None when the orbit never gets there.

    A uniform scan brackets candidate fidelity minima, each bracket is
    refined by golden-section search to relative width 1e-12, and the first
    refined minimum at or below the threshold is reported. Locating the
    minimum (rather than the eps-crossing) pins the actual touch point of
    the fidelity zero, which is what the bounds constrain.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    scalar, grid = _sqrt_fidelity_functions(scenario)
    threshold = math.sqrt(eps)
    thetas = np.linspace(0.0, scenario.theta_max, scenario.samples + 1)
    vals = grid(thetas)
    for i in range(1, scenario.samples):
        if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
            x, fx = _golden_minimize(scalar, thetas[i - 1], thetas[i + 1])
            if fx <= threshold and x > 0.0:
                return float(x)
    if vals[-1] < vals[-2]:
        x, fx = _golden_minimize(scalar, thetas[-2], thetas[-1])
        if fx <= threshold:
            return float(x)
    return None


def rate_bound_check(
    scenario: EvolutionScenario, tol: float = 1e-6, h: float | None = None
) -> RateReport:
    """Sample d(s_Wootters)/dtheta along the orbit and compare to the limits.

    Raises ViolationDetected if the rate ever exceeds sqrt(Var K)/hbar + tol,
    which cannot happen for unitary evolution. Rates above the
    ground-referenced mean-energy limit are collected in ml_excursions.
    """
    k = scenario.generator
    hbar = config.hbar()
    spread = math.sqrt(variance(scenario.initial, k))
    mt_rate = spread / hbar
    mean = expectation(scenario.initial, k) - k.ground_energy
    ml_rate = mean / hbar if mean > ZERO_SCALE_TOL else math.inf
    if h is None:
        h = 1e-4 * (hbar / spread if spread > ZERO_SCALE_TOL else scenario.theta_max)
    scalar, _ = _sqrt_fidelity_functions(scenario)

    def angle(theta: float) -> float:
        return math.acos(min(max(scalar(theta), 0.0), 1.0))

    thetas = np.linspace(0.0, scenario.theta_max, scenario.samples + 1)
    rates = np.empty_like(thetas)
    for i, t in enumerate(thetas):
        if t - h < 0.0:
            rates[i] = (angle(t + h) - angle(t)) / h
        else:
            rates[i] = (angle(t + h) - angle(t - h)) / (2.0 * h)
    worst = int(np.argmax(rates))
    if rates[worst] > mt_rate + tol:
        raise ViolationDetected(float(thetas[worst]), float(rates[worst]), mt_rate)
    excursions = tuple(
        (float(t), float(r)) for t, r in zip(thetas, rates) if r > ml_rate + tol
    )
    return RateReport(
        thetas=thetas,
        rates=rates,
        mt_rate_limit=mt_rate,
        ml_rate_limit=ml_rate,
        max_rate=float(rates[worst]),
        ml_excursions=excursions,
    )


def saturating_state(k, n: int, phase: float = 0.0) -> PureState:
    """Equal superposition of the ground eigenstate and level n with a phase.

    These are exactly the states that meet both bounds: their orthogonality
    time is pi*hbar/(E_n - E_ground)."""
    k = _as_observable(k)
    if not 0 <= n < k.dim:
        raise IndexOutOfRange(f"level {n} outside spectrum of size {k.dim}")
    lam = k.spectral.eigenvalues
    gap = lam[n] - lam[0]
    if gap <= 1e-12 * max(1.0, abs(lam[0])):
        raise DegenerateWithGround(
            f"level {n} is degenerate with the ground level (gap {gap:.3e})"
        )
    v = k.spectral.eigenvectors
    amps = (v[:, 0] + np.exp(1j * phase) * v[:, n]) / math.sqrt(2.0)
    return PureState(amps)


def default_theta_max(state: State, k) -> float | None:
    """4x the larger finite bound; None when both are infinite (eigenstates)."""
    bounds = [
        b
        for b in (mandelstam_tamm_bound(state, k), margolus_levitin_bound(state, k))
        if math.isfinite(b)
    ]
    if not bounds:
        return None
    return 4.0 * max(bounds)


def bound_report(
    state: State,
    k,
    theta_max: float | None = None,
    samples: int = DEFAULT_SAMPLES,
    eps: float = DEFAULT_EPS,
    convention: DistanceConvention = DistanceConvention.WOOTTERS_ANGLE,
) -> BoundReport:
    """Assemble both bounds, the detected orthogonality time, and the largest
    statistical distance attained over the scan window."""
    k = _as_observable(k)
    mt = mandelstam_tamm_bound(state, k)
    ml_ground = margolus_levitin_bound(state, k, ground_referenced=True)
    ml_raw = margolus_levitin_bound(state, k, ground_referenced=False)
    if theta_max is None:
        theta_max = default_theta_max(state, k)
    if theta_max is None:
        return BoundReport(None, mt, ml_ground, ml_raw, 0.0, convention)
    scenario = EvolutionScenario(state, k, theta_max, samples)
    theta_perp = orthogonality_time(scenario, eps=eps)
    _, grid = _sqrt_fidelity_functions(scenario)
    roots = grid(np.linspace(0.0, theta_max, samples + 1))
    attained = convention.scale * float(np.max(np.arccos(np.clip(roots, 0.0, 1.0))))
    return BoundReport(theta_perp, mt, ml_ground, ml_raw, attained, convention)
