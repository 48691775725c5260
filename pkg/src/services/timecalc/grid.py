"""Uniform time grids and grid-sampled vector functions."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ...config.defaults import TIME_CONFIG
from ..errors import DimensionMismatch, GridMismatch
from ..linop import EUCLIDEAN, VectorNormSpec


@dataclass(frozen=True, slots=True)
class TimeGrid:
    """Uniform partition t_j = jT/N of [0, T].

    Attributes:
        T: Horizon.
        N: Number of intervals, at least 8.
    """
    T: float
    N: int

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValueError(f"horizon must be positive, got {self.T}")
        if int(self.N) != self.N or self.N < TIME_CONFIG["min_N"]:
            raise ValueError(f"need at least {TIME_CONFIG['min_N']} intervals, got {self.N}")
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return self.T / self.N

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.N + 1)

    @property
    def weights(self) -> np.ndarray:
        """Composite trapezoid weights; they sum to T."""
        w = np.full(self.N + 1, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def refined(self) -> TimeGrid:
        return TimeGrid(self.T, 2 * self.N)

    def with_horizon(self, T: float) -> TimeGrid:
        return TimeGrid(T, self.N)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Vector-valued samples on a time grid.

    ``values`` has shape (N+1, dim). Arithmetic returns new grid functions;
    operands must share the grid.
    """
    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != self.grid.N + 1:
            raise DimensionMismatch(
                f"values of shape {values.shape} on a grid with {self.grid.N + 1} nodes"
            )
        values = np.array(values, copy=True)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @classmethod
    def zeros(cls, grid: TimeGrid, dim: int) -> GridFunction:
        return cls(grid, np.zeros((grid.N + 1, dim), dtype=complex))

    @classmethod
    def from_callable(cls, grid: TimeGrid, func: Callable[[np.ndarray], np.ndarray], dim: Optional[int] = None) -> GridFunction:
        """Sample ``func`` on the nodes; ``func`` maps an (N+1,) time array to (N+1,) or (N+1, dim)."""
        values = np.asarray(func(grid.nodes), dtype=complex)
        if values.ndim == 0:
            values = np.full(grid.N + 1, values)
        if values.ndim == 1:
            values = values[:, None]
        if dim is not None and values.shape[1] == 1 and dim > 1:
            values = np.repeat(values, dim, axis=1)
        return cls(grid, values)

    def _same_grid(self, other: GridFunction) -> None:
        if other.grid != self.grid:
            raise GridMismatch(f"grids differ: {self.grid} vs {other.grid}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions differ: {self.dim} vs {other.dim}")

    def with_values(self, values: np.ndarray) -> GridFunction:
        return GridFunction(self.grid, values)

    def __add__(self, other: GridFunction) -> GridFunction:
        self._same_grid(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: GridFunction) -> GridFunction:
        self._same_grid(other)
        return self.with_values(self.values - other.values)

    def __neg__(self) -> GridFunction:
        return self.with_values(-self.values)

    def __mul__(self, factor: complex) -> GridFunction:
        return self.with_values(self.values * complex(factor))

    __rmul__ = __mul__

    def apply_operator(self, matrix: np.ndarray) -> GridFunction:
        """Apply a dim×dim matrix at every node."""
        return self.with_values(self.values @ np.asarray(matrix).T)

    def pointwise_norms(self, space_norm: VectorNormSpec = EUCLIDEAN) -> np.ndarray:
        return space_norm.norm(self.values)

    def lp_norm(self, p: float = 2.0, space_norm: VectorNormSpec = EUCLIDEAN) -> float:
        """Discrete L^p(0,T;X) norm with trapezoid weights."""
        pointwise = self.pointwise_norms(space_norm)
        return float(np.sum(self.grid.weights * pointwise**p) ** (1.0 / p))

    def sup_norm(self) -> float:
        """max over nodes of the componentwise sup norm on ℂ^dim."""
        return float(np.max(np.abs(self.values)))

    def at(self, index: int) -> np.ndarray:
        return np.array(self.values[index])

    def to_csv(self) -> str:
        """CSV text: header t,re_0,im_0,..., one row per node, 17 significant digits."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        header = ["t"]
        for j in range(self.dim):
            header += [f"re_{j}", f"im_{j}"]
        writer.writerow(header)
        for t, row in zip(self.grid.nodes, self.values):
            cells = [format(float(t), ".17g")]
            for z in row:
                cells += [format(float(z.real), ".17g"), format(float(z.imag), ".17g")]
            writer.writerow(cells)
        return buffer.getvalue()

    @classmethod
    def from_csv(cls, text: str, T: Optional[float] = None) -> GridFunction:
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array(rows[1:], dtype=float)
        times = data[:, 0]
        values = data[:, 1::2] + 1j * data[:, 2::2]
        grid = TimeGrid(T if T is not None else float(times[-1]), len(times) - 1)
        return cls(grid, values)
