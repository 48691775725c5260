"""Discrete E-space norms and cross-checks between solution formulas."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ...config.defaults import TIME_CONFIG
from ...config.models import ENormLevel, ProblemKind, Sign
from ..linop import ModelOperator
from ..timecalc import GridFunction
from ..timecalc.derivatives import fd_first, fd_second
from .contour import ContourSpec
from .operators import j_operator_apply
from .problem import CauchyProblem
from .solvers import solve_wave


@dataclass(frozen=True)
class ENormReport:
    """Finite-dimensional surrogate of the E-space norms, with B replaced by finite differences.

    For E0 the components are ‖v‖, ‖(±iA+B)v‖ and ‖(∓iA+B)(±iA+B)v‖ and
    ``higher_order`` is 0. For E1 = ‖v‖ + E0((∓iA+B)v) they are ‖v‖,
    ‖(∓iA+B)v‖, ‖(B²+A²)v‖ and ``higher_order`` = ‖(B²+A²)(∓iA+B)v‖. For
    E2-partial = E0(v) + E0(Pv), ``higher_order`` = E0(Pv).
    """
    level: ENormLevel
    lp: float
    first: float
    second: float
    higher_order: float

    @property
    def total(self) -> float:
        return self.lp + self.first + self.second + self.higher_order


def _factor(A: ModelOperator, sign_factor: int, values: np.ndarray, h: float) -> np.ndarray:
    """(sign·iA + B) on node values."""
    return sign_factor * 1j * A.apply(values) + fd_first(values, h)


def _lp(grid, values: np.ndarray, p: float) -> float:
    return GridFunction(grid, values).lp_norm(p)


def _e0_parts(A: ModelOperator, sign: Sign, values: np.ndarray, grid, p: float) -> tuple[float, float, float, np.ndarray]:
    first = _factor(A, sign.factor, values, grid.h)
    second = _factor(A, -sign.factor, first, grid.h)
    return _lp(grid, values, p), _lp(grid, first, p), _lp(grid, second, p), second


def e_norm(
    A: ModelOperator, sign: Sign, v: GridFunction, level: ENormLevel = ENormLevel.E0, p: float = TIME_CONFIG["default_p"]
) -> ENormReport:
    grid = v.grid
    lp, first, second, applied = _e0_parts(A, sign, v.values, grid, p)
    if level is ENormLevel.E0:
        return ENormReport(level, lp, first, second, 0.0)
    if level is ENormLevel.E1:
        conjugate = _factor(A, -sign.factor, v.values, grid.h)
        w_lp, w_first, w_second, _ = _e0_parts(A, sign, conjugate, grid, p)
        return ENormReport(level, lp, w_lp, w_first, w_second)
    higher = sum(_e0_parts(A, sign, applied, grid, p)[:3])
    return ENormReport(level, lp, first, second, higher)


def inverse_composition_check(
    A: ModelOperator, f: GridFunction, contour: Optional[ContourSpec] = None, p: float = TIME_CONFIG["default_p"]
) -> float:
    """‖u - J₊J₋f‖_p / ‖f‖_p with u from ``solve_wave``.

    Raises:
        AdmissionError: f or A is not admissible for the wave solver.
        ResidualTooLarge: the wave solution fails its residual gate.
    """
    scale = f.lp_norm(p)
    if scale == 0.0:
        return 0.0
    u = solve_wave(CauchyProblem(A, Sign.PLUS, f, ProblemKind.WAVE, contour, p=p)).u
    composed = j_operator_apply(A, Sign.PLUS, j_operator_apply(A, Sign.MINUS, f, contour), contour)
    return (u - composed).lp_norm(p) / scale


def mixed_derivative_check(A: ModelOperator, u: GridFunction, p: float = TIME_CONFIG["default_p"]) -> float:
    """‖Au'‖_p / (‖u‖_p + ‖u''‖_p + ‖A²u‖_p); 0 when u = 0."""
    h = u.grid.h
    derivative = fd_first(u.values, h)
    second = fd_second(u.values, h)
    grid = u.grid
    denominator = _lp(grid, u.values, p) + _lp(grid, second, p) + _lp(grid, A.apply(A.apply(u.values)), p)
    if denominator == 0.0:
        return 0.0
    return _lp(grid, A.apply(derivative), p) / denominator
