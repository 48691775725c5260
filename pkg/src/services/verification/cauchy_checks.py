"""Oracle, residual and cross-method checks of the Cauchy solvers."""

from typing import Any, Dict, List, Tuple

import numpy as np

from ...config.models import ProblemKind, Sign
from ..cauchy import (
    CauchyProblem,
    ContourSpec,
    SolutionBundle,
    double_contour_wave_apply,
    fourier_line_apply,
    inverse_composition_check,
    j_operator_apply,
    l_operator_apply,
    solve_schrodinger,
    solve_wave,
)
from ..linop import ModelOperator
from ..timecalc import GridFunction, TimeGrid, initial_traces
from .base import BaseCheck, VerifyContext, relative_residual_of
from .suites import linear_suite, random_operator, random_w0_forcing

AGREEMENT_GRID_CAP = 256
CONVERGENCE_GRID_CAP = 128


def _relative(a: GridFunction, b: GridFunction, p: float) -> float:
    scale = max(a.lp_norm(p), b.lp_norm(p), np.finfo(float).tiny)
    return (a - b).lp_norm(p) / scale


def _constant(grid: TimeGrid, dim: int) -> GridFunction:
    return GridFunction(grid, np.ones((grid.N + 1, dim)))


class JOracleCheck(BaseCheck):
    """J₊t at t = 1 for A = 1 equals 1 - i - e^{-i}."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        grid = ctx.unit_grid()
        g = GridFunction.from_callable(grid, lambda t: t)
        value = complex(j_operator_apply(ModelOperator.diagonal([1.0]), Sign.PLUS, g).values[-1, 0])
        exact = 1.0 - 1j - np.exp(-1j)
        return abs(value - exact), {"value": value, "exact": exact}


class SchrodingerOracleCheck(BaseCheck):
    """iu' - u = 1 has u(1) = e^{-i} - 1 (trace-relaxed forcing)."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        grid = ctx.unit_grid()
        problem = CauchyProblem(ModelOperator.diagonal([1.0]), Sign.PLUS, _constant(grid, 1),
                                ProblemKind.SCHRODINGER, relax_traces=True)
        value = complex(solve_schrodinger(problem).u.values[-1, 0])
        exact = np.exp(-1j) - 1.0
        return abs(value - exact), {"value": value, "exact": exact}


class _SuiteResidualCheck(BaseCheck):
    kind = ProblemKind.SCHRODINGER
    problems = 4

    def bundles(self, ctx: VerifyContext) -> List[SolutionBundle]:
        rng = ctx.rng(self.name)
        out = []
        for k, item in enumerate(linear_suite(rng, ctx.grid, self.problems)):
            sign = Sign.PLUS if k % 2 == 0 else Sign.MINUS
            problem = CauchyProblem(item.A, sign, item.f, self.kind, p=ctx.p)
            solve = solve_schrodinger if self.kind is ProblemKind.SCHRODINGER else solve_wave
            out.append(relative_residual_of(solve, problem)[1])
        return out

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        residuals = [bundle.relative_residual for bundle in self.bundles(ctx)]
        return max(residuals), {f"problem_{k}": r for k, r in enumerate(residuals)}


class SchrodingerResidualCheck(_SuiteResidualCheck):
    kind = ProblemKind.SCHRODINGER


class WaveResidualCheck(_SuiteResidualCheck):
    kind = ProblemKind.WAVE


class WaveOracleCheck(BaseCheck):
    """Duhamel values u(1) = (1 - cos a)/a² for constant forcing."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        grid = ctx.unit_grid()
        details: Dict[str, Any] = {}
        worst = 0.0
        for spectrum in ([1.0], [1.0, 2.0]):
            a = np.array(spectrum)
            problem = CauchyProblem(ModelOperator.diagonal(spectrum), Sign.PLUS, _constant(grid, a.size),
                                    ProblemKind.WAVE, relax_traces=True)
            value = solve_wave(problem).u.values[-1]
            exact = (1.0 - np.cos(a)) / a**2
            error = float(np.max(np.abs(value - exact)))
            details[f"dim_{a.size}"] = error
            worst = max(worst, error)
        return worst, details


class LeftInverseCheck(BaseCheck):
    """J±(±iA + B)v = v for v(t) = a t² + b t³ with the exact derivative."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.grid
        t = grid.nodes[:, None]
        worst = 0.0
        for k in range(4):
            dim = 1 + k % 3
            A = random_operator(rng, dim, dense=bool(k % 2))
            a, b = rng.standard_normal((2, dim)) + 1j * rng.standard_normal((2, dim))
            v = GridFunction(grid, a * t**2 + b * t**3)
            dv = 2.0 * a * t + 3.0 * b * t**2
            for sign in Sign:
                w = v.with_values(sign.factor * 1j * A.apply(v.values) + dv)
                worst = max(worst, _relative(j_operator_apply(A, sign, w), v, ctx.p))
        return worst, {}


class MethodAgreementCheck(BaseCheck):
    """Line, Fourier-line and double-contour evaluations agree pairwise."""

    problems = 20

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.unit_grid(AGREEMENT_GRID_CAP)
        j_gap = wave_gap = 0.0
        for k in range(self.problems):
            dim = 1 + k % 2
            A = random_operator(rng, dim, dense=bool(k % 2))
            f = random_w0_forcing(rng, grid, dim)
            sign = Sign.PLUS if k % 2 == 0 else Sign.MINUS
            j_gap = max(j_gap, _relative(j_operator_apply(A, sign, f), fourier_line_apply(A, sign, f), ctx.p))
            line = l_operator_apply(A, f) * (1.0 / (2j * np.pi))
            double = double_contour_wave_apply(A, f)
            composed = fourier_line_apply(A, Sign.PLUS, fourier_line_apply(A, Sign.MINUS, f))
            wave_gap = max(wave_gap, _relative(line, double, ctx.p), _relative(line, composed, ctx.p),
                           _relative(double, composed, ctx.p))
        return max(j_gap, wave_gap), {"j_line_vs_fourier": j_gap, "wave_pairwise": wave_gap, "grid.N": grid.N}


class InverseCompositionCheck(BaseCheck):
    """Wave solution equals J₊J₋f."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        values = [inverse_composition_check(item.A, item.f, p=ctx.p) for item in linear_suite(rng, ctx.grid)]
        return max(values), {f"problem_{k}": v for k, v in enumerate(values)}


class LinearityCheck(BaseCheck):
    """J± and L are additive and homogeneous on a fixed contour."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        grid = ctx.grid
        worst = 0.0
        for k in range(3):
            dim = 1 + k
            A = random_operator(rng, dim, dense=bool(k % 2))
            f, g = random_w0_forcing(rng, grid, dim), random_w0_forcing(rng, grid, dim)
            alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            contour = ContourSpec.auto(A, grid).frozen()
            for apply in (lambda x: j_operator_apply(A, Sign.PLUS, x, contour),
                          lambda x: l_operator_apply(A, x, contour)):
                combined = apply(f * alpha + g * beta)
                separate = apply(f) * alpha + apply(g) * beta
                worst = max(worst, _relative(combined, separate, ctx.p))
        return worst, {}


class ZeroTracesCheck(BaseCheck):
    """|u(0)| ≤ 10⁻¹⁰‖u‖ and, for wave, |u'(0)| ≤ 10N⁻²‖u‖; measured as a fraction of the allowance."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        worst = 0.0
        N = ctx.grid.N
        for check in (SchrodingerResidualCheck(self.spec), WaveResidualCheck(self.spec)):
            for bundle in check.bundles(ctx):
                scale = max(bundle.u.sup_norm(), np.finfo(float).tiny)
                traces = initial_traces(bundle.u, 2 if bundle.kind is ProblemKind.WAVE else 1)
                worst = max(worst, traces[0] / (1e-10 * scale))
                if len(traces) > 1:
                    worst = max(worst, traces[1] / (10.0 * N**-2 * scale))
        return worst, {}


class ResidualConvergenceCheck(BaseCheck):
    """Doubling the time intervals, with a contour fitted to each grid, at least halves the wave residual."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        coarse = TimeGrid(ctx.T, min(ctx.N, CONVERGENCE_GRID_CAP))
        fine = coarse.refined()
        details: Dict[str, Any] = {"grid.N": coarse.N}
        worst = float("inf")
        for k in range(3):
            dim = 1 + k
            A = random_operator(rng, dim, dense=bool(k % 2))
            f = random_w0_forcing(rng, fine, dim)
            f_coarse = GridFunction(coarse, f.values[::2])
            # Each level gets its own contour; R is capped by N/(4T), so it grows with the grid.
            spec = ContourSpec.auto(A, coarse)
            spec_fine = ContourSpec.auto(A, fine)
            r0, _ = relative_residual_of(solve_wave, CauchyProblem(A, Sign.PLUS, f_coarse, ProblemKind.WAVE, spec, p=ctx.p))
            r1, bundle = relative_residual_of(solve_wave, CauchyProblem(A, Sign.PLUS, f, ProblemKind.WAVE, spec_fine, p=ctx.p))
            details[f"problem_{k}.coarse"] = r0
            details[f"problem_{k}.fine"] = r1
            details[f"problem_{k}.fine_R"] = bundle.contour.R
            worst = min(worst, r0 / max(r1, np.finfo(float).tiny))
        return worst, details


CHECKS = {
    "j-oracle": JOracleCheck,
    "schrodinger-oracle": SchrodingerOracleCheck,
    "schrodinger-residual": SchrodingerResidualCheck,
    "wave-oracle": WaveOracleCheck,
    "wave-residual": WaveResidualCheck,
    "left-inverse": LeftInverseCheck,
    "method-agreement": MethodAgreementCheck,
    "inverse-composition": InverseCompositionCheck,
    "linearity": LinearityCheck,
    "zero-traces": ZeroTracesCheck,
    "residual-convergence": ResidualConvergenceCheck,
}
