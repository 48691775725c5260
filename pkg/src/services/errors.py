"""Exception hierarchy shared by all opcontour services."""

from typing import Any, List, Optional


class OpcontourError(Exception):
    """Base class for library errors."""


class DimensionMismatch(OpcontourError, ValueError):
    """Operand shapes disagree."""


class GridMismatch(OpcontourError, ValueError):
    """Grid functions live on different time grids."""


class SingularResolvent(OpcontourError, ArithmeticError):
    """(A + λ) is numerically singular."""

    def __init__(self, shift: complex, message: Optional[str] = None):
        self.shift = complex(shift)
        super().__init__(message or f"resolvent singular at shift {self.shift}")


class IllConditioned(OpcontourError):
    """Eigenvector matrix too ill-conditioned for the oracle."""

    def __init__(self, condition: float, message: Optional[str] = None):
        self.condition = float(condition)
        super().__init__(message or f"eigenvector condition number {self.condition:.3e}")


class FunctionSingularOnSpectrum(OpcontourError, ArithmeticError):
    """A scalar function is not finite on the spectrum."""


class NotSectorial(OpcontourError):
    """Spectrum meets (-∞, 0]."""


class QuadratureNotConverged(OpcontourError):
    """Refinement did not bring the quadrature estimate below tolerance."""

    def __init__(self, estimate: float, message: Optional[str] = None):
        self.estimate = float(estimate)
        super().__init__(message or f"quadrature estimate {self.estimate:.3e} above tolerance")


class BranchCutViolation(OpcontourError, ValueError):
    """Evaluation point lies on the branch cut [0, ∞)."""


class InconsistentSquareRoot(OpcontourError, ValueError):
    """Supplied square root does not square to the operator."""


class ExponentOutOfRange(OpcontourError, ValueError):
    """Sobolev parameters outside s ∈ (0,1), p > 1."""


class ContourOrderViolation(OpcontourError, ValueError):
    """Outer contour offset r must exceed twice the inner offset c."""


class SplitIdentityViolation(OpcontourError):
    """Direct and split evaluations of (A² + λ²)^{-1} disagree."""


class GammaTooSmall(OpcontourError, ValueError):
    """Damping γ does not exceed the strip half-width of the spectrum."""


class AdmissionError(OpcontourError):
    """A Cauchy problem failed its class admission check."""

    def __init__(self, message: str, report: Any = None):
        self.report = report
        super().__init__(message)


class TraceConditionViolation(AdmissionError):
    """Forcing violates its vanishing-trace conditions."""


class ResidualTooLarge(OpcontourError):
    """Recomputed residual above tolerance; carries the solution bundle."""

    def __init__(self, bundle: Any, tolerance: float):
        self.bundle = bundle
        self.tolerance = tolerance
        super().__init__(
            f"relative residual {bundle.relative_residual:.3e} exceeds {tolerance:.1e}"
        )


class MaxIterationsExceeded(OpcontourError):
    """Fixed-point iteration stopped without converging; carries the trace."""

    def __init__(self, trace: Any, message: Optional[str] = None):
        self.trace = trace
        super().__init__(message or f"no convergence after {trace.iterations} iterations")


class FixedPointDiverged(MaxIterationsExceeded):
    """Two consecutive contraction ratios above the divergence limit."""


class BallExit(OpcontourError):
    """Iterate left the ball around the seed."""

    def __init__(self, trace: Any, distance: float, radius: float):
        self.trace = trace
        self.distance = distance
        self.radius = radius
        super().__init__(f"iterate left ball: distance {distance:.3e} > radius {radius:.3e}")


class OverflowDetected(OpcontourError, ArithmeticError):
    """ODE state exceeded the overflow limit."""

    def __init__(self, time: float, norm: float):
        self.time = time
        self.norm = norm
        super().__init__(f"state norm {norm:.3e} at t={time:.6g}")


class SchemaError(OpcontourError, ValueError):
    """Problem file is malformed or fails schema validation."""

    def __init__(self, messages: List[str]):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages) or "invalid problem file")
