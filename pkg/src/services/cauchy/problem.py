"""Abstract Cauchy problems, their admission checks and solution bundles."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ...config.defaults import SOLVER_CONFIG, TIME_CONFIG
from ...config.models import ProblemKind, Sign, get_solver_config
from ..classes import ClassificationReport, ParabolaRegion, StripRegion, check_parabola, check_strip
from ..errors import AdmissionError, DimensionMismatch, TraceConditionViolation
from ..linop import ModelOperator, operator_norm
from ..timecalc import GridFunction, initial_traces, trace_tolerance
from .contour import ContourSpec

logger = logging.getLogger(__name__)


def admission_report(A: ModelOperator, kind: ProblemKind, c: float, k_max: float) -> ClassificationReport:
    """Strip check of A (Schrödinger) or parabola check of A² with root A (wave)."""
    if kind is ProblemKind.SCHRODINGER:
        region = StripRegion.default(c, max(operator_norm(A), 1.0), A.eigenvalues())
        return check_strip(A, region, k_max)
    Lam = A.square()
    region = ParabolaRegion.default(c, max(operator_norm(Lam), 1.0))
    return check_parabola(Lam, region, k_max, A)


def trace_violations(f: GridFunction, orders: int) -> List[str]:
    """Messages for each ∂^m f(0), m < orders, above the trace tolerance."""
    tolerance = trace_tolerance(f, SOLVER_CONFIG["trace_factor"])
    return [
        f"forcing trace |d^{m}f(0)| = {value:.3e} exceeds {tolerance:.3e}"
        for m, value in enumerate(initial_traces(f, orders))
        if value > tolerance
    ]


@dataclass
class CauchyProblem:
    """iu' ∓ Au = f (Schrödinger) or u'' + A²u = f (wave) on [0, T] with zero traces.

    Construction runs the admission checks: the strip class of A for
    Schrödinger problems, the parabola class of A² for wave problems, and the
    vanishing traces of f the solver needs. With ``relax_traces`` a trace
    violation is recorded in ``warnings`` instead of raising.

    Attributes:
        A: Space operator.
        sign: Upper (+) or lower (-) sign.
        f: Forcing.
        kind: schrodinger or wave.
        contour: Line contour; derived from A and the grid when omitted.
        relax_traces: Accept forcings that violate their trace conditions.
        k_max: Ceiling for the admission constant.
        p: Exponent of the L^p norms used for residuals.
        admit: Run the class admission check.
    """
    A: ModelOperator
    sign: Sign
    f: GridFunction
    kind: ProblemKind
    contour: Optional[ContourSpec] = None
    relax_traces: bool = False
    k_max: float = SOLVER_CONFIG["k_max"]
    p: float = TIME_CONFIG["default_p"]
    admit: bool = True
    warnings: List[str] = field(init=False, default_factory=list)
    admission: Optional[ClassificationReport] = field(init=False, default=None)

    def __post_init__(self) -> None:
        if self.kind not in (ProblemKind.SCHRODINGER, ProblemKind.WAVE):
            raise ValueError(f"not a linear Cauchy problem: {self.kind.value}")
        if self.f.dim != self.A.dim:
            raise DimensionMismatch(f"forcing has dimension {self.f.dim}, operator {self.A.dim}")
        if self.contour is None:
            self.contour = ContourSpec.auto(self.A, self.f.grid)
        else:
            self.contour.validate_for(self.A)
        if self.admit:
            self._check_class()
        self._check_traces()

    @property
    def grid(self):
        return self.f.grid

    def _check_class(self) -> None:
        report = admission_report(self.A, self.kind, abs(self.contour.c), self.k_max)
        self.admission = report
        if not report.passed:
            raise AdmissionError(
                f"{report.tag.value} admission failed: K={report.constant:.6g} at {report.worst_point}"
                + (" (singular)" if report.singular else ""),
                report,
            )
        logger.debug("admitted by %s check, K=%.6g", report.tag.value, report.constant)

    def _check_traces(self) -> None:
        orders = get_solver_config(self.kind).trace_orders
        violations = trace_violations(self.f, orders)
        if not violations:
            return
        if not self.relax_traces:
            raise TraceConditionViolation("; ".join(violations))
        for message in violations:
            logger.warning("%s (relaxed)", message)
        self.warnings.extend(violations)


@dataclass
class SolutionBundle:
    """A solution with diagnostics recomputed from it.

    Attributes:
        u: Solution samples.
        residual: Discrete L^p norm of the equation residual of u.
        relative_residual: residual / ‖f‖_p (the residual itself when f = 0).
        trace_norms: |u(0)| and, for wave problems, |u'(0)|.
        quadrature_estimate: Last-octave estimate of the line quadrature.
        contour: Contour at which the quadrature stopped.
        sign_correction: Factor between the printed solution formula and the
            residual-verified solution; 1 for the formulas used here.
    """
    u: GridFunction
    residual: float
    relative_residual: float
    trace_norms: List[float]
    quadrature_estimate: float
    contour: ContourSpec
    kind: ProblemKind
    sign: Sign
    method: str
    sign_correction: complex = 1.0
    split_discrepancy: Optional[float] = None
    converged: bool = True
    warnings: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "kind": self.kind,
            "method": self.method,
            "sign": self.sign,
            "residual": self.residual,
            "relative_residual": self.relative_residual,
            "trace.u0": self.trace_norms[0] if self.trace_norms else 0.0,
            "quadrature_estimate": self.quadrature_estimate,
            "quadrature_converged": self.converged,
            "contour.c": self.contour.c,
            "contour.R": self.contour.R,
            "contour.M": self.contour.M,
            "sign_correction": self.sign_correction,
            "grid.T": self.u.grid.T,
            "grid.N": self.u.grid.N,
            "u_T": list(np.asarray(self.u.values[-1])),
        }
        if len(self.trace_norms) > 1:
            out["trace.du0"] = self.trace_norms[1]
        if self.split_discrepancy is not None:
            out["split_discrepancy"] = self.split_discrepancy
        return out
