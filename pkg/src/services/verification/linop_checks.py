"""Resolvent and norm invariants of the dense linear algebra layer."""

from typing import Any, Dict, Tuple

import numpy as np

from ..linop import ModelOperator, operator_norm, resolvent_apply
from .base import BaseCheck, VerifyContext


def _complex_normal(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class ResolventIdentityCheck(BaseCheck):
    """R(λ) - R(μ) = (μ - λ)R(λ)R(μ) on random dense operators."""

    pairs = 100

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for k in range(self.pairs):
            dim = 1 + k % 4
            A = ModelOperator.dense(_complex_normal(rng, dim, dim))
            lam, mu = _complex_normal(rng, 2) * 2.0
            x = _complex_normal(rng, dim)
            left = resolvent_apply(A, lam, x) - resolvent_apply(A, mu, x)
            right = (mu - lam) * resolvent_apply(A, lam, resolvent_apply(A, mu, x))
            scale = max(np.linalg.norm(left), np.linalg.norm(right), np.finfo(float).tiny)
            worst = max(worst, float(np.linalg.norm(left - right) / scale))
        return worst, {"pairs": self.pairs}


class DiagonalResolventCheck(BaseCheck):
    """Diagonal resolvents are componentwise 1/(a_j + λ)."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for _ in range(100):
            spectrum = _complex_normal(rng, 4)
            lam = complex(_complex_normal(rng, 1)[0])
            x = _complex_normal(rng, 4)
            got = resolvent_apply(ModelOperator.diagonal(spectrum), lam, x)
            expected = x / (spectrum + lam)
            worst = max(worst, float(np.max(np.abs(got - expected) / np.abs(expected))))
        return worst, {}


class NormalOperatorNormCheck(BaseCheck):
    """‖A‖₂ = max|λ| for A = Q diag(λ) Q* with Q unitary."""

    def measure(self, ctx: VerifyContext) -> Tuple[float, Dict[str, Any]]:
        rng = ctx.rng(self.name)
        worst = 0.0
        for k in range(20):
            dim = 2 + k % 3
            Q, _ = np.linalg.qr(_complex_normal(rng, dim, dim))
            values = _complex_normal(rng, dim)
            A = ModelOperator.dense(Q @ np.diag(values) @ Q.conj().T)
            expected = float(np.max(np.abs(values)))
            worst = max(worst, abs(operator_norm(A) - expected) / expected)
        return worst, {"operators": 20}


CHECKS = {
    "resolvent-identity": ResolventIdentityCheck,
    "diagonal-resolvent": DiagonalResolventCheck,
    "normal-operator-norm": NormalOperatorNormCheck,
}
