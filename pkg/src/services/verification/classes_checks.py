"""Fractional powers, projections and class-equivalence invariants."""

from typing import Any, Dict, Tuple

import numpy as np

from ..classes import (
    RademacherTrialSpec,
    balakrishnan_power,
    estimate_r_bound,
    imaginary_power_oracle,
    pv_projection,
    q_operator,
    strip_parabola_equivalence,
)
from ..cauchy import strip_offset
from ..linop import ModelOperator, matrix_function_oracle, resolvent_apply
from .base import BaseCheck, VerifyContext
from .suites import random_operator, random_positive_operator


class BalakrishnanOracleCheck(BaseCheck):
    """A^{-θ} by ray quadrature against the eigen oracle, A = diag(1, 4)."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        A = ModelOperator.diagonal([1.0, 4.0])
        details = {}
        for theta in (0.25, 0.5, 0.75):
            oracle = matrix_function_oracle(A, lambda z: z**-theta).matrix()
            details[f"theta_{theta}"] = float(np.linalg.norm(balakrishnan_power(A, theta).matrix() - oracle, 2))
        return max(details.values()), details


class BalakrishnanSemigroupCheck(BaseCheck):
    """A^{-θ₁}A^{-θ₂} = A^{-(θ₁+θ₂)} on a non-normal operator."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        A = ModelOperator.dense([[2.0, 1.0], [0.0, 3.0]])
        worst = 0.0
        for t1, t2 in ((0.25, 0.5), (0.3, 0.3), (0.1, 0.8)):
            product = balakrishnan_power(A, t1).compose(balakrishnan_power(A, t2)).matrix()
            worst = max(worst, float(np.linalg.norm(product - balakrishnan_power(A, t1 + t2).matrix(), 2)))
        return worst, {}


class FracpowDecompositionCheck(BaseCheck):
    """(A+λ)^{-1}A^{-θ} = (-λ)^{-θ}(A+λ)^{-1} + Q_A(λ) on random operators."""

    operators = 50

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for k in range(self.operators):
            A = random_positive_operator(rng, 1 + k % 3)
            theta = float(rng.uniform(0.1, 0.9))
            lam = complex(-rng.uniform(0.1, 3.0), rng.choice((-1.0, 1.0)) * rng.uniform(0.5, 3.0))
            eye = np.eye(A.dim)
            R = resolvent_apply(A, lam, eye)
            power = balakrishnan_power(A, theta).matrix()
            defect = R @ power - (-lam) ** -theta * R - q_operator(A, lam, theta).matrix()
            worst = max(worst, float(np.linalg.norm(defect, 2) / np.linalg.norm(power, 2)))
        return worst, {"operators": self.operators}


class PvRateCheck(BaseCheck):
    """Log-log slope of the principal-value projection error is -1."""

    radii = (1e2, 1e3, 1e4)

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        details: Dict[str, Any] = {}
        worst = 0.0
        for label, A, u in (("scalar", ModelOperator.diagonal([2.0]), np.array([1.0])),
                            ("diag", ModelOperator.diagonal([1.0, 3.0]), np.array([1.0, 1.0]))):
            errors = np.array([np.linalg.norm(pv_projection(A, 0.0, u, R) - u) for R in self.radii])
            slope = float(np.polyfit(np.log(self.radii), np.log(errors), 1)[0])
            details[f"{label}.slope"] = slope
            details[f"{label}.error_R1e3"] = float(errors[1])
            worst = max(worst, abs(slope + 1.0))
            if errors[1] > 1e-2:
                worst = float("inf")
        return worst, details


class StripParabolaEquivalenceCheck(BaseCheck):
    """Strip bounds of A transfer to parabola bounds of A²."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for k in range(6):
            A = random_operator(rng, 1 + k % 3, dense=bool(k % 2))
            report = strip_parabola_equivalence(A, strip_offset(A), seed=ctx.seed)
            worst = max(worst, report.pointwise_excess - 1.0, report.split_residual)
        return max(worst, 0.0), {"operators": 6}


class RBoundHilbertCheck(BaseCheck):
    """For p = 2 the R-bound is the sup of norms: random trials alone come within 2% of it and none exceed it."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        family = rng.standard_normal((6, 2, 2)) + 1j * rng.standard_normal((6, 2, 2))
        seeded = estimate_r_bound(family, RademacherTrialSpec(n=4, trials=4096, probes=4, seed=ctx.seed))
        sampled = estimate_r_bound(family, RademacherTrialSpec(n=1, trials=4096, probes=4, seed=ctx.seed),
                                   seed_top=False)
        sup_norm = seeded.sup_norm
        details = {"estimate": seeded.estimate, "sampled": sampled.estimate, "sup_norm": sup_norm,
                   "exhaustive": seeded.exhaustive and sampled.exhaustive}
        if max(seeded.estimate, sampled.estimate) > sup_norm + 1e-8 or not details["exhaustive"]:
            return float("inf"), details
        return 1.0 - sampled.estimate / sup_norm, details


class ImaginaryPowerGroupCheck(BaseCheck):
    """A^{it}A^{is} = A^{i(t+s)}."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for k in range(10):
            A = random_positive_operator(rng, 1 + k % 3)
            t, s = rng.uniform(-2.0, 2.0, 2)
            product = imaginary_power_oracle(A, t).compose(imaginary_power_oracle(A, s)).matrix()
            target = imaginary_power_oracle(A, t + s).matrix()
            worst = max(worst, float(np.linalg.norm(product - target, 2) / np.linalg.norm(target, 2)))
        return worst, {}


CHECKS = {
    "balakrishnan-oracle": BalakrishnanOracleCheck,
    "balakrishnan-semigroup": BalakrishnanSemigroupCheck,
    "fracpow-decomposition": FracpowDecompositionCheck,
    "pv-rate": PvRateCheck,
    "strip-parabola-equivalence": StripParabolaEquivalenceCheck,
    "r-bound-hilbert": RBoundHilbertCheck,
    "imaginary-power-group": ImaginaryPowerGroupCheck,
}
