"""Measured stability constant Ĉ(T) of the semilinear solver over shrinking horizons."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ...config.defaults import TIME_CONFIG
from ...config.models import ENormLevel, Sign
from ..cauchy import ContourSpec, e_norm
from ..errors import OpcontourError
from ..linop import ModelOperator
from .fixed_point import FixedPointConfig, fixed_point_solve
from .nonlinearity import PolynomialNonlinearity, evaluate_F

logger = logging.getLogger(__name__)

DEFAULT_HORIZONS = (1.0, 0.5, 0.25, 0.125)
STABILITY_RATIO_LIMIT = 10.0
HALF_CONTRACTION = 0.5


@dataclass
class StabilityEntry:
    """Ĉ(T) = E2-partial(u) / E0(F(u, ·)) at one horizon.

    ``constant`` is None when the entry was skipped (F(u, ·) = 0) or the
    solve failed; ``error`` then names the failure.
    """
    T: float
    constant: Optional[float] = None
    skipped: bool = False
    error: Optional[str] = None
    iterations: int = 0
    max_ratio: Optional[float] = None


@dataclass
class StabilitySweep:
    entries: List[StabilityEntry] = field(default_factory=list)

    @property
    def constants(self) -> List[float]:
        return [e.constant for e in self.entries if e.constant is not None]

    @property
    def ratio(self) -> Optional[float]:
        """max/min of the measured constants."""
        values = self.constants
        if not values:
            return None
        low = min(values)
        return max(values) / low if low > 0 else float("inf")

    @property
    def passed(self) -> bool:
        """Constants agree to an order of magnitude; vacuous when every entry was skipped."""
        if any(e.error for e in self.entries):
            return False
        ratio = self.ratio
        return ratio is None or ratio <= STABILITY_RATIO_LIMIT

    @property
    def half_contraction(self) -> Optional[bool]:
        """Whether every contraction ratio at the smallest solved horizon is at most 1/2."""
        solved = [e for e in self.entries if e.error is None and e.iterations > 0]
        if not solved:
            return None
        smallest = min(solved, key=lambda e: e.T)
        if smallest.max_ratio is None:
            return True
        return smallest.max_ratio <= HALF_CONTRACTION

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for k, entry in enumerate(self.entries):
            out[f"sweep_{k}.T"] = entry.T
            if entry.error:
                out[f"sweep_{k}.error"] = entry.error
            elif entry.skipped:
                out[f"sweep_{k}.skipped"] = "0/0"
            else:
                out[f"sweep_{k}.constant"] = entry.constant
        out["sweep.ratio"] = self.ratio
        out["sweep.passed"] = self.passed
        out["sweep.half_contraction"] = self.half_contraction
        return out


def stability_constant_sweep(
    A: ModelOperator,
    F: PolynomialNonlinearity,
    horizons: Sequence[float] = DEFAULT_HORIZONS,
    contour: Optional[ContourSpec] = None,
    config: Optional[FixedPointConfig] = None,
    relax_traces: bool = False,
    p: float = TIME_CONFIG["default_p"],
) -> StabilitySweep:
    """Solve at each horizon and measure Ĉ(T); solver errors are recorded per entry.

    Horizons must not exceed the horizon F is sampled on. Horizons run one
    after another; each solve parallelizes its own contour sums.
    """
    sweep = StabilitySweep()
    for T in horizons:
        entry = StabilityEntry(T=float(T))
        sweep.entries.append(entry)
        try:
            F_T = F.on_grid(F.grid.with_horizon(T))
            bundle, trace = fixed_point_solve(A, F_T, config, contour, relax_traces, p)
        except OpcontourError as e:
            entry.error = f"{type(e).__name__}: {e}"
            logger.warning("stability sweep at T=%.6g failed: %s", T, e)
            continue
        entry.iterations = trace.iterations
        entry.max_ratio = trace.max_ratio()
        forcing = evaluate_F(F_T, bundle.u)
        denominator = e_norm(A, Sign.PLUS, forcing, ENormLevel.E0, p).total
        if denominator == 0.0:
            entry.skipped = True
            continue
        entry.constant = e_norm(A, Sign.PLUS, bundle.u, ENormLevel.E2_PARTIAL, p).total / denominator
        logger.info("Ĉ(%.6g) = %.6g", T, entry.constant)
    return sweep
