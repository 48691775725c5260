"""Polynomial nonlinearities F(x, t) = c₀(t) + Σ c_k(t) x^k with grid-sampled coefficients."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import DimensionMismatch, GridMismatch
from ..timecalc import GridFunction, TimeGrid, initial_traces, trace_tolerance

logger = logging.getLogger(__name__)

COEFFICIENT_TRACE_ORDERS = 2


@dataclass(frozen=True)
class CoefficientSource:
    """Where a coefficient comes from, so it can be sampled on any grid.

    Attributes:
        poly: Ascending polynomial coefficients in t, one row per component
            (a single row is broadcast).
        table: Samples on an equispaced grid of [0, T_table], one column per
            component (a single column is broadcast).
        T_table: Horizon of ``table``.
    """
    poly: Optional[np.ndarray] = None
    table: Optional[np.ndarray] = None
    T_table: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.poly is None) == (self.table is None):
            raise ValueError("a coefficient needs exactly one of poly or table")
        if self.poly is not None:
            poly = np.atleast_2d(np.asarray(self.poly, dtype=complex))
            object.__setattr__(self, "poly", poly)
        else:
            table = np.asarray(self.table, dtype=complex)
            if table.ndim == 1:
                table = table[:, None]
            if table.shape[0] < 2:
                raise ValueError("a coefficient table needs at least two rows")
            object.__setattr__(self, "table", table)

    @classmethod
    def constant(cls, value: complex) -> CoefficientSource:
        return cls(poly=np.array([[value]]))

    @property
    def components(self) -> int:
        return self.poly.shape[0] if self.poly is not None else self.table.shape[1]

    def sample(self, grid: TimeGrid) -> np.ndarray:
        """(N+1, components) values on the grid nodes."""
        t = grid.nodes
        if self.poly is not None:
            # np.polyval wants descending powers.
            return np.stack([np.polyval(row[::-1], t) for row in self.poly], axis=1)
        T_table = self.T_table if self.T_table is not None else grid.T
        rows = self.table.shape[0]
        if rows == grid.N + 1 and np.isclose(T_table, grid.T):
            return np.array(self.table)
        if grid.T > T_table * (1.0 + 1e-12):
            raise GridMismatch(f"coefficient table covers [0, {T_table}], grid needs [0, {grid.T}]")
        return resample(self.table, T_table, t)


def resample(values: np.ndarray, T: float, times: np.ndarray) -> np.ndarray:
    """Cubic-spline resampling of equispaced samples on [0, T], real and imaginary parts separately."""
    source = np.linspace(0.0, T, values.shape[0])
    real = CubicSpline(source, values.real, axis=0)(times)
    imag = CubicSpline(source, values.imag, axis=0)(times)
    return real + 1j * imag


@dataclass(frozen=True)
class PolynomialNonlinearity:
    """F(x, t) = c₀(t) + Σ_{k≥1} c_k(t) x^k with componentwise powers.

    Coefficients are scalar (one column, broadcast) or vector-valued (dim
    columns).

    Attributes:
        forcing: c₀ = F(0, ·).
        terms: Degree k ≥ 1 to coefficient c_k.
        sources: How to resample each coefficient on another grid; keys
            0 (forcing) and the term degrees.
    """
    forcing: GridFunction
    terms: Dict[int, GridFunction] = field(default_factory=dict)
    sources: Optional[Dict[int, CoefficientSource]] = None

    def __post_init__(self) -> None:
        for k, coefficient in self.terms.items():
            if int(k) != k or k < 1:
                raise ValueError(f"term degrees must be positive integers, got {k}")
            if coefficient.grid != self.forcing.grid:
                raise GridMismatch(f"coefficient c_{k} lives on {coefficient.grid}, forcing on {self.forcing.grid}")
            if coefficient.dim not in (1, self.forcing.dim):
                raise DimensionMismatch(f"coefficient c_{k} has dimension {coefficient.dim}, forcing {self.forcing.dim}")

    @classmethod
    def from_sources(
        cls, grid: TimeGrid, dim: int, forcing: CoefficientSource, terms: Optional[Dict[int, CoefficientSource]] = None
    ) -> PolynomialNonlinearity:
        terms = terms or {}
        sources = {0: forcing, **terms}

        def sampled(source: CoefficientSource, broadcast: bool) -> GridFunction:
            values = source.sample(grid)
            if values.shape[1] not in (1, dim):
                raise DimensionMismatch(f"coefficient has {values.shape[1]} components, operator dimension is {dim}")
            if broadcast and values.shape[1] == 1 and dim > 1:
                values = np.repeat(values, dim, axis=1)
            return GridFunction(grid, values)

        return cls(
            forcing=sampled(forcing, True),
            terms={k: sampled(source, False) for k, source in sorted(terms.items())},
            sources=sources,
        )

    @property
    def grid(self) -> TimeGrid:
        return self.forcing.grid

    @property
    def dim(self) -> int:
        return self.forcing.dim

    @property
    def degree(self) -> int:
        return max(self.terms, default=1)

    @property
    def is_linear(self) -> bool:
        """No nonzero term of degree ≥ 1, so F(u, t) = c₀(t)."""
        return not any(np.any(c.values) for c in self.terms.values())

    @property
    def is_trivial(self) -> bool:
        return self.is_linear and not np.any(self.forcing.values)

    def on_grid(self, grid: TimeGrid) -> PolynomialNonlinearity:
        """The same nonlinearity sampled on another grid of [0, T'] with T' ≤ T."""
        if grid == self.grid:
            return self
        if self.sources is not None:
            return PolynomialNonlinearity.from_sources(
                grid, self.dim, self.sources[0], {k: s for k, s in self.sources.items() if k != 0}
            )
        if grid.T > self.grid.T * (1.0 + 1e-12):
            raise GridMismatch(f"cannot extend coefficients from [0, {self.grid.T}] to [0, {grid.T}]")
        def move(c: GridFunction) -> GridFunction:
            return GridFunction(grid, resample(c.values, self.grid.T, grid.nodes))

        return PolynomialNonlinearity(move(self.forcing), {k: move(c) for k, c in self.terms.items()})

    def trace_warnings(self) -> List[str]:
        """Coefficients with c(0) or c'(0) above the trace tolerance."""
        messages = []
        for label, coefficient in [("c0", self.forcing), *((f"c{k}", c) for k, c in self.terms.items())]:
            tolerance = trace_tolerance(coefficient)
            for m, value in enumerate(initial_traces(coefficient, COEFFICIENT_TRACE_ORDERS)):
                if value > tolerance:
                    messages.append(f"coefficient {label}: |d^{m}{label}(0)| = {value:.3e} exceeds {tolerance:.3e}")
        return messages


def evaluate_F(F: PolynomialNonlinearity, u: GridFunction) -> GridFunction:
    """F(u(t), t) = c₀(t) + Σ c_k(t) u(t)^k, powers taken componentwise."""
    if u.grid != F.grid:
        raise GridMismatch(f"u lives on {u.grid}, F on {F.grid}")
    if u.dim != F.dim:
        raise DimensionMismatch(f"u has dimension {u.dim}, F {F.dim}")
    values = np.array(F.forcing.values)
    for k, coefficient in F.terms.items():
        values = values + coefficient.values * u.values**k
    return u.with_values(values)
