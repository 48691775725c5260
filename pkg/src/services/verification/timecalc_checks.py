"""Invariants of the discrete derivation operator and the Sobolev norms."""

from typing import Any, Dict, Tuple

import numpy as np

from ..timecalc import GridFunction, SobolevParams, TimeGrid, b_resolvent_apply, sobolev_seminorm, verify_brnd
from .base import BaseCheck, VerifyContext

BRND_GRID_CAP = 256
REFINEMENT_GRID_CAP = 256


def _smooth_function(rng: np.random.Generator, grid: TimeGrid, dim: int = 2) -> GridFunction:
    omega = rng.uniform(-3.0, 3.0, dim)
    a = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    t = grid.nodes[:, None]
    return GridFunction(grid, a * np.exp(1j * omega * t) + t**2)


class BrndBoundCheck(BaseCheck):
    """Discrete ‖(B+λ)^{-1}‖ stays below (1 - e^{-Re λ T})/Re λ up to 10/N."""

    def _grid(self, ctx: VerifyContext) -> TimeGrid:
        return TimeGrid(ctx.T, min(ctx.N, BRND_GRID_CAP))

    def threshold(self, ctx: VerifyContext) -> float:
        return 1.0 + self.spec.threshold / self._grid(ctx).N

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = self._grid(ctx)
        ratios = []
        for k in range(100):
            lam = complex(rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0))
            ratios.append(verify_brnd(lam, grid, seed=ctx.seed + k, p=ctx.p).ratio)
        return max(ratios), {"shifts": len(ratios), "grid.N": grid.N}


class BResolventCausalityCheck(BaseCheck):
    """Perturbing samples after node j leaves outputs up to j unchanged."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.grid
        worst = 0.0
        for _ in range(10):
            u = _smooth_function(rng, grid)
            j = int(rng.integers(1, grid.N))
            noise = np.zeros_like(u.values)
            noise[j + 1:] = rng.standard_normal(noise[j + 1:].shape)
            lam = complex(rng.uniform(-2.0, 2.0), rng.uniform(-3.0, 3.0))
            before = b_resolvent_apply(lam, u).values[: j + 1]
            after = b_resolvent_apply(lam, u.with_values(u.values + noise)).values[: j + 1]
            worst = max(worst, float(np.max(np.abs(after - before))))
        return worst, {}


class BResolventIdentityCheck(BaseCheck):
    """(B+λ)^{-1} - (B+μ)^{-1} = (μ-λ)(B+λ)^{-1}(B+μ)^{-1} to O(h²)."""

    def threshold(self, ctx: VerifyContext) -> float:
        return self.spec.threshold * ctx.grid.h**2

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.grid
        worst = 0.0
        for _ in range(10):
            u = _smooth_function(rng, grid)
            lam = complex(rng.uniform(0.0, 2.0), rng.uniform(-3.0, 3.0))
            mu = lam + complex(rng.uniform(1.0, 2.0), rng.uniform(-1.0, 1.0))
            left = b_resolvent_apply(lam, u) - b_resolvent_apply(mu, u)
            right = (mu - lam) * b_resolvent_apply(lam, b_resolvent_apply(mu, u))
            worst = max(worst, (left - right).lp_norm(ctx.p) / left.lp_norm(ctx.p))
        return worst, {"h": grid.h}


class SobolevLinearCheck(BaseCheck):
    """[t]_{W^{1/2,2}(0,1)} = 1 and constants have seminorm 0."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        grid = ctx.unit_grid()
        params = SobolevParams(s=0.5, k=0, p=2.0)
        linear = sobolev_seminorm(GridFunction.from_callable(grid, lambda t: t), params)
        constant = sobolev_seminorm(GridFunction.from_callable(grid, np.ones_like), params)
        error = abs(linear - 1.0)
        if constant != 0.0:
            error = float("inf")
        return error, {"seminorm": linear, "constant_seminorm": constant}


class GridRefinementCheck(BaseCheck):
    """Halving h divides the (B+1)^{-1}cos error by 4."""

    @staticmethod
    def _error(grid: TimeGrid) -> float:
        t = grid.nodes
        exact = 0.5 * (np.cos(t) + np.sin(t) - np.exp(-t))
        got = b_resolvent_apply(1.0, GridFunction(grid, np.cos(t))).values[:, 0]
        return float(np.max(np.abs(got - exact)))

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        coarse = ctx.unit_grid(REFINEMENT_GRID_CAP)
        ratio = self._error(coarse) / self._error(coarse.refined())
        return abs(ratio / 4.0 - 1.0), {"ratio": ratio, "grid.N": coarse.N}


CHECKS = {
    "brnd-bound": BrndBoundCheck,
    "b-resolvent-causality": BResolventCausalityCheck,
    "b-resolvent-identity": BResolventIdentityCheck,
    "sobolev-linear": SobolevLinearCheck,
    "grid-refinement": GridRefinementCheck,
}
