"""Exception types shared across the package."""


class QslError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(QslError):
    """Matrix fails the Hermiticity tolerance."""


class NotPSD(QslError):
    """Matrix has an eigenvalue below the negativity clamp window."""


class ConvergenceFailure(QslError):
    """An iterative linear-algebra routine failed to converge."""


class DimMismatch(QslError):
    """Operands live in Hilbert spaces of different dimension."""


class LengthMismatch(QslError):
    """Probability vectors have different lengths."""


class OffSimplexTangent(QslError):
    """Tangent vector does not sum to zero, so it leaves the simplex."""


class DivergentDirection(QslError):
    """Tangent has weight on a zero-probability outcome; the metric diverges."""


class OutsideSupport(QslError):
    """Operator has weight outside the support of the density matrix."""


class InvalidPovm(QslError):
    """POVM elements are not PSD or do not resolve the identity."""


class ZeroProbabilityOutcome(QslError):
    """Fisher information undefined: probability vanishes where it varies."""


class ViolationDetected(QslError):
    """A speed-limit rate bound was exceeded during a unitary scenario."""

    def __init__(self, theta: float, rate: float, limit: float):
        self.theta = theta
        self.rate = rate
        self.limit = limit
        super().__init__(
            f"rate {rate:.6e} exceeds limit {limit:.6e} at theta={theta:.6e}"
        )


class IndexOutOfRange(QslError):
    """Eigenlevel index outside the spectrum."""


class DegenerateWithGround(QslError):
    """Requested level is degenerate with the ground level; the state never orthogonalizes."""


class TooManyQubits(QslError):
    """Statevector size would exceed the supported qubit budget."""


class CrossCheckMismatch(QslError):
    """Statevector and stabilizer descriptions of the circuit disagree."""


class DegenerateRegime(QslError):
    """Requested violation regime needs a satellite gap above the central gap."""


class ParseError(QslError):
    """Configuration document is not well-formed."""


class ValidationError(QslError):
    """Configuration document is well-formed but semantically invalid."""
