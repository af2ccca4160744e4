"""Global numeric configuration.

All formulas carry the reduced Planck constant symbolically; the default of
1.0 keeps tests and reports in natural units, while set_hbar lets a caller
produce SI-flavored numbers.
"""

from contextlib import contextmanager

_hbar = 1.0

SUPPORT_TOL = 1e-12


def hbar() -> float:
    return _hbar


def set_hbar(value: float) -> None:
    if not value > 0:
        raise ValueError(f"hbar must be positive, got {value!r}")
    global _hbar
    _hbar = float(value)


@contextmanager
def hbar_value(value: float):
    """Temporarily override hbar (mainly for tests and the CLI)."""
    previous = _hbar
    set_hbar(value)
    try:
        yield
    finally:
        set_hbar(previous)
