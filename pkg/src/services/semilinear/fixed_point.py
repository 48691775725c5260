"""Banach fixed-point iteration for u'' + A²u = F(u, t) around the wave solver."""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ...config.defaults import CONTOUR_CONFIG, FIXED_POINT_CONFIG, SOLVER_CONFIG, TIME_CONFIG
from ...config.models import ProblemKind, Sign, get_solver_config
from ..cauchy import CauchyProblem, ContourSpec, SolutionBundle, l_operator_evaluate, wave_residual
from ..errors import (
    BallExit,
    FixedPointDiverged,
    MaxIterationsExceeded,
    OpcontourError,
    QuadratureNotConverged,
    ResidualTooLarge,
)
from ..linop import ModelOperator
from ..timecalc import GridFunction, initial_traces
from .nonlinearity import PolynomialNonlinearity, evaluate_F

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FixedPointConfig:
    """Stopping rules of the Picard iteration.

    Attributes:
        tolerance: Converged when ‖u_{k+1} - u_k‖_∞ ≤ tolerance·max(1, ‖u_{k+1}‖_∞).
        max_iterations: Iteration cap.
        ball_radius: r; iterates must stay within ‖u_k - u₀‖_∞ ≤ r.
        window: Consecutive ratios above the divergence limit that stop the run.
    """
    tolerance: float = FIXED_POINT_CONFIG["tolerance"]
    max_iterations: int = FIXED_POINT_CONFIG["max_iterations"]
    ball_radius: float = FIXED_POINT_CONFIG["ball_radius"]
    window: int = FIXED_POINT_CONFIG["window"]

    def __post_init__(self) -> None:
        if self.tolerance < 1e-10:
            raise ValueError(f"tolerance must be at least 1e-10, got {self.tolerance}")
        if self.max_iterations < 2:
            raise ValueError(f"need at least 2 iterations, got {self.max_iterations}")
        if not self.ball_radius > 0:
            raise ValueError(f"ball radius must be positive, got {self.ball_radius}")
        if self.window < 1:
            raise ValueError(f"contraction window must be positive, got {self.window}")


@dataclass
class IterationTrace:
    """Update norms and contraction ratios of one run.

    ``ratios[k]`` is updates[k+1] / updates[k].
    """
    updates: List[float] = field(default_factory=list)
    ratios: List[float] = field(default_factory=list)
    converged: bool = False
    ball_exit: bool = False
    contour_refits: int = 0

    @property
    def iterations(self) -> int:
        return len(self.updates)

    def record(self, update: float) -> None:
        if self.updates:
            previous = self.updates[-1]
            self.ratios.append(update / previous if previous > 0 else 0.0)
        self.updates.append(update)

    def diverging(self, window: int) -> bool:
        limit = FIXED_POINT_CONFIG["divergence_ratio"]
        return len(self.ratios) >= window and all(r > limit for r in self.ratios[-window:])

    def max_ratio(self) -> Optional[float]:
        return max(self.ratios) if self.ratios else None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for k, update in enumerate(self.updates, start=1):
            out[f"iter_{k}_update"] = update
            if k >= 2:
                out[f"iter_{k}_ratio"] = self.ratios[k - 2]
        out["iterations"] = self.iterations
        out["converged"] = self.converged
        out["ball_exit"] = self.ball_exit
        out["contour_refits"] = self.contour_refits
        return out


class _WaveMap:
    """g ↦ (B² + A²)^{-1}g on a contour fixed after the first solve.

    A frozen contour that stops resolving the growing iterates is refitted
    once by the adaptive doubling; ``refits`` counts those.
    """

    def __init__(self, A: ModelOperator, contour: ContourSpec, strict: bool):
        self.A = A
        self.contour = contour
        self.strict = strict
        self.estimate = 0.0
        self.split_discrepancy = 0.0
        self.refits = 0

    def _evaluate(self, g: GridFunction):
        try:
            return l_operator_evaluate(self.A, g, self.contour, self.strict)
        except QuadratureNotConverged as e:
            if self.contour.adaptive:
                raise
            logger.info("frozen contour lost accuracy (%s); refitting", e)
            self.refits += 1
            refit = dataclasses.replace(self.contour, adaptive=True, max_doublings=CONTOUR_CONFIG["max_doublings"])
            return l_operator_evaluate(self.A, g, refit, self.strict)

    def __call__(self, g: GridFunction) -> GridFunction:
        result = self._evaluate(g)
        self.contour = result.integral.contour.frozen()
        self.estimate = max(self.estimate, result.integral.estimate / (2.0 * np.pi))
        self.split_discrepancy = max(self.split_discrepancy, result.split_discrepancy)
        return g.with_values(result.values / (2j * np.pi))


def fixed_point_solve(
    A: ModelOperator,
    F: PolynomialNonlinearity,
    config: Optional[FixedPointConfig] = None,
    contour: Optional[ContourSpec] = None,
    relax_traces: bool = False,
    p: float = TIME_CONFIG["default_p"],
) -> Tuple[SolutionBundle, IterationTrace]:
    """Iterate u_{k+1} = (B² + A²)^{-1}F(u_k, ·) from u₀ = (B² + A²)^{-1}c₀.

    Raises:
        BallExit: an iterate left the ball of radius r around u₀.
        FixedPointDiverged: ``window`` consecutive ratios above 1.5, or an
            iterate the refitted contour cannot resolve.
        MaxIterationsExceeded: no convergence within the iteration cap.
        ResidualTooLarge: converged iterate fails the residual gate.
    """
    config = config or FixedPointConfig()
    seed_problem = CauchyProblem(A, Sign.PLUS, F.forcing, ProblemKind.WAVE, contour, relax_traces=relax_traces, p=p)
    warnings = list(seed_problem.warnings)
    # c_k·u^k inherits the zero traces of u, so only c₀ gates admission.
    for message in F.trace_warnings():
        if not message.startswith("coefficient c0"):
            logger.info(message)
    wave = _WaveMap(A, seed_problem.contour, strict=not warnings)
    trace = IterationTrace()

    u0 = wave(F.forcing)
    u = u0
    for _ in range(config.max_iterations):
        try:
            u_next = wave(evaluate_F(F, u))
        except QuadratureNotConverged as e:
            trace.contour_refits = wave.refits
            raise FixedPointDiverged(trace, f"iterate {trace.iterations + 1} no longer resolved by the contour: {e}") from e
        trace.contour_refits = wave.refits
        update = (u_next - u).sup_norm()
        trace.record(update)
        distance = (u_next - u0).sup_norm()
        logger.debug("iteration %d: update %.3e, distance %.3e", trace.iterations, update, distance)
        if not np.isfinite(update) or distance > config.ball_radius:
            trace.ball_exit = True
            raise BallExit(trace, distance, config.ball_radius)
        u = u_next
        if update <= config.tolerance * max(1.0, u.sup_norm()):
            trace.converged = True
            break
        if trace.diverging(config.window):
            raise FixedPointDiverged(trace, f"contraction ratios {trace.ratios[-config.window:]} above limit")
    if not trace.converged:
        raise MaxIterationsExceeded(trace)

    forcing = evaluate_F(F, u)
    residual = wave_residual(A, u, forcing).lp_norm(p)
    relative = residual / max(forcing.lp_norm(p), np.finfo(float).eps)
    bundle = SolutionBundle(
        u=u,
        residual=residual,
        relative_residual=relative,
        trace_norms=initial_traces(u, get_solver_config(ProblemKind.SEMILINEAR).solution_traces),
        quadrature_estimate=wave.estimate,
        contour=wave.contour,
        kind=ProblemKind.SEMILINEAR,
        sign=Sign.PLUS,
        method=get_solver_config(ProblemKind.SEMILINEAR).name,
        split_discrepancy=wave.split_discrepancy,
        warnings=warnings,
    )
    tolerance = SOLVER_CONFIG["residual_tolerance"]
    if relative > tolerance:
        if not warnings:
            raise ResidualTooLarge(bundle, tolerance)
        bundle.warnings.append(f"relative residual {relative:.3e} exceeds {tolerance:.1e} (trace-relaxed forcing)")
    logger.info("fixed point converged in %d iterations, residual %.3e", trace.iterations, relative)
    return bundle, trace


@dataclass
class HorizonSearchResult:
    """Outcome of trying T, T/2, ..., T/2^m.

    Attributes:
        horizon: First horizon that converged, or None.
        halvings: m for that horizon.
        attempts: (T, outcome) per try; outcome is "converged" or the error.
        conclusive: Some horizon converged.
    """
    horizon: Optional[float]
    halvings: Optional[int]
    bundle: Optional[SolutionBundle]
    trace: Optional[IterationTrace]
    attempts: List[Tuple[float, str]]

    @property
    def conclusive(self) -> bool:
        return self.horizon is not None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"conclusive": self.conclusive, "horizon": self.horizon, "halvings": self.halvings}
        for k, (T, outcome) in enumerate(self.attempts):
            out[f"attempt_{k}.T"] = T
            out[f"attempt_{k}.outcome"] = outcome
        return out


def shrinking_horizon_search(
    A: ModelOperator,
    F: PolynomialNonlinearity,
    config: Optional[FixedPointConfig] = None,
    T: Optional[float] = None,
    max_halvings: int = FIXED_POINT_CONFIG["max_halvings"],
    relax_traces: bool = False,
    p: float = TIME_CONFIG["default_p"],
) -> HorizonSearchResult:
    """Solve on the first of T, T/2, ..., T/2^max_halvings where the iteration converges."""
    T = F.grid.T if T is None else float(T)
    attempts: List[Tuple[float, str]] = []
    for m in range(max_halvings + 1):
        horizon = T / 2**m
        grid = F.grid.with_horizon(horizon)
        try:
            bundle, trace = fixed_point_solve(A, F.on_grid(grid), config, None, relax_traces, p)
        except OpcontourError as e:
            logger.info("horizon %.6g failed: %s", horizon, e)
            attempts.append((horizon, f"{type(e).__name__}: {e}"))
            continue
        attempts.append((horizon, "converged"))
        return HorizonSearchResult(horizon, m, bundle, trace, attempts)
    logger.warning("no horizon down to T/2^%d converged; inconclusive", max_halvings)
    return HorizonSearchResult(None, None, None, None, attempts)
