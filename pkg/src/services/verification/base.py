"""Base class for verification checks."""

from __future__ import annotations

import logging
import zlib
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ...config.defaults import RUNTIME_CONFIG, TIME_CONFIG
from ...config.models import CheckSpec
from ..errors import OpcontourError, ResidualTooLarge
from ..timecalc import TimeGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyContext:
    """Resolution and seed a verification run works at.

    Attributes:
        N: Intervals of the run's time grid.
        T: Horizon of the run's time grid.
        p: L^p exponent of residual norms.
        seed: Root seed; every check derives its own generator from it.
    """
    N: int = TIME_CONFIG["default_N"]
    T: float = TIME_CONFIG["default_T"]
    p: float = TIME_CONFIG["default_p"]
    seed: int = RUNTIME_CONFIG["seed"]

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid(self.T, self.N)

    def unit_grid(self, cap: Optional[int] = None) -> TimeGrid:
        """Grid of [0, 1] at the run's N, optionally capped."""
        return TimeGrid(1.0, self.N if cap is None else min(self.N, cap))

    def rng(self, name: str) -> np.random.Generator:
        """Generator seeded by (seed, name), independent of check order."""
        return np.random.default_rng([self.seed, zlib.crc32(name.encode("utf-8"))])


@dataclass
class CheckOutcome:
    """One row of the verification matrix."""
    name: str
    group: str
    measured: float
    threshold: float
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "group": self.group,
            "measured": self.measured,
            "threshold": self.threshold,
            "passed": self.passed,
        }
        if self.error:
            out["error"] = self.error
        out.update({f"detail.{key}": value for key, value in self.details.items()})
        return out


class BaseCheck(ABC):
    """Abstract base class for verification checks."""

    def __init__(self, spec: CheckSpec):
        self.spec = spec
        self.name = spec.name

    @abstractmethod
    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        """Return the measured value and supporting details."""
        pass

    def threshold(self, ctx: VerifyContext) -> float:
        """Bound the measured value is compared against."""
        return self.spec.threshold

    def compare(self, measured: float, threshold: float) -> bool:
        if not np.isfinite(measured):
            return False
        return measured >= threshold if self.spec.at_least else measured <= threshold

    def run(self, ctx: VerifyContext) -> CheckOutcome:
        """Measure and compare; library errors become failed rows."""
        threshold = self.threshold(ctx)
        try:
            measured, details = self.measure(ctx)
        except OpcontourError as e:
            logger.warning("check %s raised %s: %s", self.name, type(e).__name__, e)
            return CheckOutcome(self.name, self.spec.group, float("nan"), threshold, False,
                                error=f"{type(e).__name__}: {e}")
        measured = float(measured)
        passed = self.compare(measured, threshold)
        logger.debug("check %s: measured %.6g vs %.6g", self.name, measured, threshold)
        return CheckOutcome(self.name, self.spec.group, measured, threshold, passed, details)


def relative_residual_of(solve, *args) -> Tuple[float, Any]:
    """Relative residual of a solve, also when the residual gate rejects it."""
    try:
        bundle = solve(*args)
    except ResidualTooLarge as e:
        bundle = e.bundle
    return bundle.relative_residual, bundle
