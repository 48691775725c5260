"""Sobolev–Slobodetskii seminorms and norms on a time grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from ...config.defaults import CONTOUR_CONFIG, SOLVER_CONFIG
from ...utils.parallel import chunk_ranges, ordered_map
from ..errors import ExponentOutOfRange
from .derivatives import derivative_values, fd_first, trace_tolerance
from .grid import GridFunction


@dataclass(frozen=True, slots=True)
class SobolevParams:
    """Order k + s and integrability p of W^{k+s,p}(0,T; X)."""
    s: float
    k: int = 0
    p: float = 2.0

    def __post_init__(self) -> None:
        if not 0.0 < self.s < 1.0:
            raise ExponentOutOfRange(f"fractional order s must lie in (0,1), got {self.s}")
        if not self.p > 1.0:
            raise ExponentOutOfRange(f"integrability p must exceed 1, got {self.p}")
        if self.k not in (0, 1, 2):
            raise ExponentOutOfRange(f"integer order k must be 0, 1 or 2, got {self.k}")

    @property
    def diagonal_exponent(self) -> float:
        """α in ‖v(x)-v(y)‖^p/|x-y|^{1+sp} ≈ L^p |x-y|^α for Lipschitz v."""
        return self.p * (1.0 - self.s) - 1.0


@dataclass(frozen=True, slots=True)
class SeminormReport:
    """[∂^k u]_{W^{s,p}} with its two contributions (both p-th powers)."""
    seminorm: float
    off_diagonal: float
    diagonal_estimate: float


def sobolev_seminorm_report(u: GridFunction, params: SobolevParams) -> SeminormReport:
    """Tensor trapezoid over x ≠ y plus a local-Lipschitz estimate of the diagonal cells."""
    v = derivative_values(u, params.k)
    grid = u.grid
    t = grid.nodes
    w = grid.weights
    p = params.p
    exponent = 1.0 + params.s * p

    def rows(block: range) -> float:
        idx = np.fromiter(block, dtype=int)
        diff = np.linalg.norm(v[idx, None, :] - v[None, :, :], axis=-1) ** p
        gap = np.abs(t[idx, None] - t[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            kernel = np.where(gap > 0.0, diff / gap**exponent, 0.0)
        return float(np.sum(w[idx, None] * w[None, :] * kernel))

    chunks = chunk_ranges(grid.N + 1, CONTOUR_CONFIG["chunk_size"])
    off_diagonal = math.fsum(ordered_map(rows, chunks))

    alpha = params.diagonal_exponent
    lipschitz = np.linalg.norm(fd_first(v, grid.h), axis=-1)
    cell = 2.0 * w ** (alpha + 2.0) / ((alpha + 1.0) * (alpha + 2.0))
    diagonal = float(np.sum(lipschitz**p * cell))

    total = off_diagonal + diagonal
    return SeminormReport(total ** (1.0 / p), off_diagonal, diagonal)


def sobolev_seminorm(u: GridFunction, params: SobolevParams) -> float:
    return sobolev_seminorm_report(u, params).seminorm


def weighted_trace_integral(values: np.ndarray, grid, p: float) -> float:
    """(∫₀^T ‖v(x)‖^p dx/x)^{1/p}; the first cell uses ‖v(x)‖ ≈ (‖v(h)‖/h)·x."""
    norms = np.linalg.norm(values, axis=-1)
    h = grid.h
    slope = norms[1] / h
    first = slope**p * h**p / p
    w = np.full(grid.N, h)
    w[0] = w[-1] = 0.5 * h
    rest = float(np.sum(w * norms[1:] ** p / grid.nodes[1:]))
    return (first + rest) ** (1.0 / p)


@dataclass(frozen=True)
class SobolevReport:
    """‖u‖_{W^{k+s,p}} with its parts and the W₀ trace classification.

    Attributes:
        norm: Σ_{m≤k} ‖∂^m u‖_p + [∂^k u]_{W^{s,p}}.
        trace_flags: one flag per vanishing-trace condition of W₀^{k+s,p}.
        weighted_trace: [∂^k u]_p when s = 1/p, else None.
        in_w0: all trace flags hold.
    """
    norm: float
    integer_part: float
    seminorm: float
    diagonal_estimate: float
    trace_tolerance: float
    trace_flags: Dict[str, bool] = field(default_factory=dict)
    weighted_trace: Optional[float] = None

    @property
    def in_w0(self) -> bool:
        return all(self.trace_flags.values())


def sobolev_norm_report(u: GridFunction, params: SobolevParams) -> SobolevReport:
    integer_part = 0.0
    for m in range(params.k + 1):
        integer_part += u.with_values(derivative_values(u, m)).lp_norm(params.p)
    semi = sobolev_seminorm_report(u, params)

    tol = trace_tolerance(u, SOLVER_CONFIG["trace_factor"])
    flags: Dict[str, bool] = {}
    for m in range(params.k):
        flags[f"trace_{m}"] = bool(np.linalg.norm(derivative_values(u, m)[0]) <= tol)

    weighted = None
    top = derivative_values(u, params.k)
    critical = 1.0 / params.p
    if math.isclose(params.s, critical, rel_tol=1e-12):
        vanishes = bool(np.linalg.norm(top[0]) <= tol)
        flags["weighted_trace_finite"] = vanishes
        weighted = weighted_trace_integral(top, u.grid, params.p) if vanishes else math.inf
    elif params.s > critical:
        flags[f"trace_{params.k}"] = bool(np.linalg.norm(top[0]) <= tol)

    return SobolevReport(
        norm=integer_part + semi.seminorm,
        integer_part=integer_part,
        seminorm=semi.seminorm,
        diagonal_estimate=semi.diagonal_estimate,
        trace_tolerance=tol,
        trace_flags=flags,
        weighted_trace=weighted,
    )


def sobolev_norm(u: GridFunction, params: SobolevParams) -> float:
    return sobolev_norm_report(u, params).norm
