"""Fixed-point solver checks against Duhamel and RK4 references."""

from typing import Any, Dict, Tuple

import numpy as np

from ..linop import ModelOperator
from ..semilinear import (
    CoefficientSource,
    PolynomialNonlinearity,
    evaluate_F,
    fixed_point_solve,
    ode_oracle,
    shrinking_horizon_search,
    stability_constant_sweep,
)
from ..timecalc import GridFunction, TimeGrid
from .base import BaseCheck, VerifyContext
from .suites import random_operator

T_SQUARED = CoefficientSource(poly=np.array([[0.0, 0.0, 1.0]]))
ORACLE_TOLERANCE = 1e-3


def _nonlinearity(grid: TimeGrid, dim: int, forcing: CoefficientSource, terms: Dict[int, float]) -> PolynomialNonlinearity:
    return PolynomialNonlinearity.from_sources(
        grid, dim, forcing, {k: CoefficientSource.constant(c) for k, c in terms.items()}
    )


class SemilinearLinearCaseCheck(BaseCheck):
    """F = t² gives u(1) = 2cos 1 - 1."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        F = _nonlinearity(ctx.unit_grid(), 1, T_SQUARED, {})
        bundle, trace = fixed_point_solve(ModelOperator.diagonal([1.0]), F, p=ctx.p)
        value = complex(bundle.u.values[-1, 0])
        exact = 2.0 * np.cos(1.0) - 1.0
        return abs(value - exact), {"value": value, "iterations": trace.iterations}


class SemilinearOracleCheck(BaseCheck):
    """Converged fixed points match RK4 within 10⁻³(1 + ‖u‖∞) on a mild suite."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.unit_grid()
        cases = [(ModelOperator.diagonal([1.0]), {2: 0.1})]
        for k in range(3):
            dim = 1 + k
            A = random_operator(rng, dim, dense=False, high=4.0)
            degree = int(rng.integers(1, 4))
            cases.append((A, {degree: float(rng.uniform(-0.2, 0.2))}))
        details: Dict[str, Any] = {}
        worst = 0.0
        for k, (A, terms) in enumerate(cases):
            F = _nonlinearity(grid, A.dim, T_SQUARED, terms)
            bundle, trace = fixed_point_solve(A, F, p=ctx.p)
            reference = ode_oracle(A, F, grid)
            gap = (bundle.u - reference).sup_norm() / (1.0 + bundle.u.sup_norm())
            details[f"case_{k}.gap"] = gap
            details[f"case_{k}.max_ratio"] = trace.max_ratio()
            worst = max(worst, gap)
        return worst, details


class HorizonHalvingCheck(BaseCheck):
    """F = t² + 1.5·10⁴u² blows up before t = 1; the search must halve and then match RK4."""

    coefficient = 1.5e4

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        A = ModelOperator.diagonal([1.0])
        F = _nonlinearity(ctx.unit_grid(), 1, T_SQUARED, {2: self.coefficient})
        result = shrinking_horizon_search(A, F, p=ctx.p)
        details = result.to_dict()
        if not result.conclusive or result.halvings == 0:
            return float("inf"), details
        reference = ode_oracle(A, F.on_grid(result.bundle.u.grid))
        gap = (result.bundle.u - reference).sup_norm() / (1.0 + result.bundle.u.sup_norm())
        details["oracle_gap"] = gap
        if gap > ORACLE_TOLERANCE:
            return float("inf"), details
        return float(result.halvings), details


class StabilitySweepCheck(BaseCheck):
    """Ĉ(T) varies by at most a factor 10 over T ∈ {1, 1/2, 1/4, 1/8}."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        grid = ctx.unit_grid()
        details: Dict[str, Any] = {}
        worst = 0.0
        for label, A, terms in (("scalar", ModelOperator.diagonal([1.0]), {}),
                                ("diag", ModelOperator.diagonal([1.0, 2.0]), {2: 0.1})):
            sweep = stability_constant_sweep(A, _nonlinearity(grid, A.dim, T_SQUARED, terms), p=ctx.p)
            details.update({f"{label}.{key}": value for key, value in sweep.to_dict().items()})
            failed = any(entry.error for entry in sweep.entries)
            worst = max(worst, float("inf") if failed or sweep.ratio is None else sweep.ratio)
        return worst, details


class BanachAlgebraCheck(BaseCheck):
    """‖xy‖∞ ≤ ‖x‖∞‖y‖∞ for the componentwise product used by F."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = TimeGrid(1.0, 16)
        worst = 0.0
        for _ in range(100):
            dim = int(rng.integers(1, 5))
            x, y = (GridFunction(grid, rng.standard_normal((17, dim)) + 1j * rng.standard_normal((17, dim)))
                    for _ in range(2))
            product = evaluate_F(PolynomialNonlinearity(GridFunction.zeros(grid, dim), {1: y}), x)
            bound = x.sup_norm() * y.sup_norm()
            worst = max(worst, product.sup_norm() - bound * (1.0 + 4.0 * np.finfo(float).eps))
        return max(worst, 0.0), {"trials": 100}


CHECKS = {
    "semilinear-linear-case": SemilinearLinearCaseCheck,
    "semilinear-oracle": SemilinearOracleCheck,
    "horizon-halving": HorizonHalvingCheck,
    "stability-sweep": StabilitySweepCheck,
    "banach-algebra": BanachAlgebraCheck,
}
