"""Truncated vertical-line quadrature for operator-valued contour integrals.

Every solution operator here is an integral over the line Re λ = -c of

    prefactor · (P + κλ^q)^{-1} (B + λ)^{-1} g

with B the derivation operator of the time grid. The line is sampled at the
midpoints y_k = ±(k + 1/2)h. The truncated remainder |Im λ| > R is added from
the large-|λ| expansion of the integrand. R is doubled at fixed h until the
last octave R/2 ≤ |Im λ| < R stops contributing.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ...config.defaults import CONTOUR_CONFIG
from ...utils.parallel import chunk_ranges, ordered_map
from ..errors import QuadratureNotConverged, SingularResolvent
from ..linop import ModelOperator, operator_norm, resolvent_apply_batch
from ..timecalc import GridFunction, TimeGrid, b_resolvent_batch
from ..timecalc.derivatives import fd_first

logger = logging.getLogger(__name__)


def strip_offset(A: ModelOperator) -> float:
    """c = 1.5·max|Im σ(A)| + 0.5."""
    return CONTOUR_CONFIG["offset_factor"] * float(np.max(np.abs(A.eigenvalues().imag))) + CONTOUR_CONFIG["offset_margin"]


@dataclass(frozen=True)
class ContourSpec:
    """The line Re λ = -c sampled at M midpoint nodes on |Im λ| ≤ R.

    Attributes:
        c: Offset; the line is Re λ = -c.
        R: Truncation radius.
        M: Node count, a multiple of 4 so that R/2 splits the nodes evenly.
        adaptive: Double R (and M, keeping h) until the last octave is negligible.
        max_doublings: Cap on doublings.
        R_limit: Largest admissible R; the trapezoid resolvent of B is only
            accurate while |λ|h stays small.
    """
    c: float
    R: float
    M: int
    adaptive: bool = True
    max_doublings: int = CONTOUR_CONFIG["max_doublings"]
    R_limit: Optional[float] = None

    def __post_init__(self) -> None:
        if self.c == 0:
            raise ValueError("contour offset must be nonzero")
        if not self.R > 0:
            raise ValueError(f"truncation radius must be positive, got {self.R}")
        if int(self.M) != self.M or self.M < 4 or self.M % 2:
            raise ValueError(f"node count must be an even integer ≥ 4, got {self.M}")
        if self.M % 4:
            object.__setattr__(self, "M", int(self.M) + 2)
        object.__setattr__(self, "M", int(self.M))

    @property
    def x0(self) -> float:
        return -float(self.c)

    @property
    def h(self) -> float:
        return 2.0 * self.R / self.M

    @classmethod
    def auto(cls, A: ModelOperator, grid: TimeGrid, c: Optional[float] = None) -> ContourSpec:
        """Offset, radius and spacing from the spectrum of A and the grid.

        R starts at 50·max(1, ‖A‖), capped at N/(4T) and floored at
        10·max(c, ‖A‖, 1); h resolves both the pole distance and the
        frequencies present on [0, T].
        """
        c = strip_offset(A) if c is None else float(c)
        norm_A = operator_norm(A)
        limit = CONTOUR_CONFIG["resolution_fraction"] * grid.N / grid.T
        R = min(CONTOUR_CONFIG["radius_factor"] * max(1.0, norm_A), limit)
        R = max(R, CONTOUR_CONFIG["radius_floor_factor"] * max(abs(c), norm_A, 1.0))
        gap = abs(c) - float(np.max(np.abs(A.eigenvalues().imag)))
        h = min(gap / 4.0 if gap > 0 else abs(c) / 4.0, np.pi / (4.0 * grid.T))
        R = 2.0 * h * np.ceil(R / (2.0 * h))
        M = int(round(2.0 * R / h))
        return cls(c, R, M, R_limit=max(limit, R))

    def frozen(self) -> ContourSpec:
        """Same nodes, no further doubling."""
        return dataclasses.replace(self, adaptive=False, max_doublings=0)

    def with_offset(self, c: float) -> ContourSpec:
        return dataclasses.replace(self, c=c)

    def validate_for(self, A: ModelOperator) -> None:
        scale = 10.0 * max(abs(self.c), operator_norm(A))
        if self.R < scale * (1.0 - 1e-12):
            raise ValueError(f"truncation radius {self.R} below 10·max(|c|, ‖A‖) = {scale}")


@dataclass(frozen=True)
class SpaceFactor:
    """The space-side factor (P + κλ^q)^{-1} and the scalar prefactor of an integral."""
    P: ModelOperator
    kappa: complex
    q: int
    prefactor: complex
    label: str

    def poles(self) -> np.ndarray:
        """λ with κλ^q = -μ for μ ∈ σ(P)."""
        roots = -self.P.eigenvalues() / self.kappa
        if self.q == 1:
            return roots
        principal = np.sqrt(roots.astype(complex))
        return np.concatenate([principal, -principal])

    def shifts(self, lams: np.ndarray) -> np.ndarray:
        return self.kappa * lams**self.q


def j_factor(A: ModelOperator, sign_factor: int) -> SpaceFactor:
    """(±iA - λ)^{-1} with 1/(2πi)."""
    return SpaceFactor(A.scaled(1j * sign_factor), -1.0, 1, 1.0 / (2j * np.pi), "J+" if sign_factor > 0 else "J-")


def l_factor(A: ModelOperator) -> SpaceFactor:
    """(A² + λ²)^{-1}, no prefactor."""
    return SpaceFactor(A.square(), 1.0, 2, 1.0, "L")


def inner_factor(A: ModelOperator) -> SpaceFactor:
    """(A - iλ)^{-1} with 1/(2πi)."""
    return SpaceFactor(A, -1j, 1, 1.0 / (2j * np.pi), "inner")


def outer_factor(A: ModelOperator) -> SpaceFactor:
    """(A + iz)^{-1} with 1/(2πi)."""
    return SpaceFactor(A, 1j, 1, 1.0 / (2j * np.pi), "outer")


@dataclass(frozen=True)
class LineIntegralResult:
    """Values of a line integral and its last-octave error estimate."""
    values: np.ndarray
    estimate: float
    contour: ContourSpec
    doublings: int
    converged: bool
    pole_gap: float

    @property
    def R(self) -> float:
        return self.contour.R

    @property
    def M(self) -> int:
        return self.contour.M


def pole_gap(factor: SpaceFactor, spec: ContourSpec) -> float:
    """Distance from the line to the nearest pole; poles must lie to its right."""
    poles = factor.poles()
    gaps = poles.real - spec.x0
    worst = int(np.argmin(gaps))
    if gaps[worst] <= 0.0:
        raise SingularResolvent(complex(poles[worst]), f"{factor.label} pole {poles[worst]} not right of Re λ = {spec.x0}")
    return float(gaps[worst])


def _tail_power(x0: float, R: float, n: int) -> complex:
    """∫ over |Im λ| > R of λ^{-n} dλ on Re λ = x0."""
    return ((x0 - 1j * R) ** (1 - n) - (x0 + 1j * R) ** (1 - n)) / (1 - n)


class _LineSampler:
    """Band sums of the integrand at fixed node spacing."""

    def __init__(self, factor: SpaceFactor, g: GridFunction, x0: float, h: float):
        self.factor = factor
        self.g = g
        self.x0 = x0
        self.h = h
        self.rhs = g.values
        self.derivative = fd_first(g.values, g.grid.h)
        self.applied = factor.P.apply(g.values)

    def _chunk(self, lams: np.ndarray) -> np.ndarray:
        resolved = b_resolvent_batch(lams, self.rhs, self.g.grid.h)
        stacked = np.ascontiguousarray(resolved.transpose(0, 2, 1))
        solved = resolvent_apply_batch(self.factor.P, self.factor.shifts(lams), stacked)
        return np.sum(solved, axis=0).T

    def band(self, k_start: int, k_stop: int) -> np.ndarray:
        """Σ over ±(k + 1/2)h, k_start ≤ k < k_stop, of the integrand (no weights)."""
        k = np.arange(k_start, k_stop)
        y = (k + 0.5) * self.h
        lams = self.x0 + 1j * np.concatenate([y, -y])
        chunks = [lams[r.start:r.stop] for r in chunk_ranges(lams.size, CONTOUR_CONFIG["chunk_size"])]
        partial: List[np.ndarray] = ordered_map(self._chunk, chunks)
        total = np.zeros_like(self.rhs)
        for piece in partial:
            total = total + piece
        return total

    def tail(self, R: float) -> np.ndarray:
        """Integral over |Im λ| > R of the large-|λ| expansion of the integrand."""
        kappa, q = self.factor.kappa, self.factor.q
        out = (
            self.rhs / kappa * _tail_power(self.x0, R, q + 1)
            - self.derivative / kappa * _tail_power(self.x0, R, q + 2)
            - self.applied / kappa**2 * _tail_power(self.x0, R, 2 * q + 1)
        )
        out[0] = 0.0
        return out


def line_integral(factor: SpaceFactor, g: GridFunction, spec: ContourSpec, strict: bool = True) -> LineIntegralResult:
    """Evaluate prefactor·∫_{Re λ = -c} (P + κλ^q)^{-1}(B + λ)^{-1}g dλ.

    Raises:
        SingularResolvent: a pole of the space factor lies on or left of the line.
        QuadratureNotConverged: the last-octave estimate exceeds 10⁻³ of the
            result when strict; otherwise a warning is logged.
    """
    gap = pole_gap(factor, spec)
    if not np.any(g.values):
        return LineIntegralResult(np.zeros_like(g.values), 0.0, spec, 0, True, gap)

    sampler = _LineSampler(factor, g, spec.x0, spec.h)
    weight = factor.prefactor * 1j * spec.h
    R, M = spec.R, spec.M
    inner = sampler.band(0, M // 4)
    outer = sampler.band(M // 4, M // 2)
    limit = spec.R_limit if spec.R_limit is not None else np.inf
    doublings = 0
    while True:
        full = weight * (inner + outer) + factor.prefactor * sampler.tail(R)
        half = weight * inner + factor.prefactor * sampler.tail(R / 2.0)
        estimate = float(np.max(np.abs(full - half)))
        scale = max(float(np.max(np.abs(full))), np.finfo(float).tiny)
        converged = estimate <= CONTOUR_CONFIG["octave_tolerance"] * scale
        logger.debug("%s: R=%.6g M=%d estimate=%.3e (relative %.3e)", factor.label, R, M, estimate, estimate / scale)
        if converged or not spec.adaptive or doublings >= spec.max_doublings or 2.0 * R > limit:
            break
        inner = inner + outer
        outer = sampler.band(M // 2, M)
        R, M = 2.0 * R, 2 * M
        doublings += 1

    final = dataclasses.replace(spec, R=R, M=M)
    if estimate > CONTOUR_CONFIG["failure_tolerance"] * scale:
        if strict:
            raise QuadratureNotConverged(estimate, f"{factor.label} line integral: octave estimate {estimate:.3e} at R={R:.6g}")
        logger.warning("%s line integral not converged: estimate %.3e at R=%.6g", factor.label, estimate, R)
    return LineIntegralResult(full, estimate, final, doublings, converged, gap)
