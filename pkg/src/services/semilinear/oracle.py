"""Classical RK4 reference for the semilinear wave equation."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ...config.defaults import FIXED_POINT_CONFIG
from ..errors import DimensionMismatch, OverflowDetected
from ..linop import ModelOperator
from ..timecalc import GridFunction, TimeGrid
from .nonlinearity import PolynomialNonlinearity

logger = logging.getLogger(__name__)


def ode_oracle(
    A: ModelOperator,
    F: PolynomialNonlinearity,
    grid: Optional[TimeGrid] = None,
    substeps: int = FIXED_POINT_CONFIG["substeps"],
) -> GridFunction:
    """Integrate v' = w, w' = -A²v + F(v, t), v(0) = w(0) = 0 with RK4.

    Coefficients are evaluated at the half steps through ``F.on_grid`` on a
    grid of 2·N·substeps intervals.

    Raises:
        OverflowDetected: ‖(v, w)‖ exceeded the overflow limit.
    """
    grid = grid or F.grid
    if substeps < 4:
        raise ValueError(f"need at least 4 substeps per interval, got {substeps}")
    if A.dim != F.dim:
        raise DimensionMismatch(f"operator dimension {A.dim}, nonlinearity {F.dim}")
    fine = TimeGrid(grid.T, 2 * grid.N * substeps)
    Ff = F.on_grid(fine)
    forcing = Ff.forcing.values
    terms = [(k, c.values) for k, c in Ff.terms.items()]
    Lam = A.square().matrix()
    delta = grid.h / substeps
    limit = FIXED_POINT_CONFIG["overflow_limit"]

    def rhs(j: int, v: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        source = np.array(forcing[j])
        for k, c in terms:
            source = source + c[j] * v**k
        return w, source - Lam @ v

    v = np.zeros(A.dim, dtype=complex)
    w = np.zeros(A.dim, dtype=complex)
    out = np.zeros((grid.N + 1, A.dim), dtype=complex)
    for n in range(grid.N):
        for s in range(substeps):
            j = 2 * (n * substeps + s)
            k1v, k1w = rhs(j, v, w)
            k2v, k2w = rhs(j + 1, v + 0.5 * delta * k1v, w + 0.5 * delta * k1w)
            k3v, k3w = rhs(j + 1, v + 0.5 * delta * k2v, w + 0.5 * delta * k2w)
            k4v, k4w = rhs(j + 2, v + delta * k3v, w + delta * k3w)
            v = v + delta / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            w = w + delta / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
            size = max(np.abs(v).max(), np.abs(w).max())
            if not np.isfinite(size) or size > limit:
                raise OverflowDetected(fine.nodes[j + 2], float(size))
        out[n + 1] = v
    logger.debug("RK4 reference: %d steps of %.3e", grid.N * substeps, delta)
    return GridFunction(grid, out)
