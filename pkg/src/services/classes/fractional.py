"""Fractional and imaginary powers of sectorial operators via ray quadrature."""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import sqrtm

from ...config.defaults import RAY_QUADRATURE_CONFIG
from ..errors import (
    BranchCutViolation,
    ExponentOutOfRange,
    IllConditioned,
    NotSectorial,
    QuadratureNotConverged,
    SingularResolvent,
)
from ..linop import ModelOperator, matrix_function_oracle, resolvent_apply, resolvent_apply_batch, resolvent_matrices, spectral_scale

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class RayQuadrature:
    """Trapezoid rule on [0, ∞) after the substitution s = e^σ.

    Attributes:
        nodes: Number of σ nodes on [ln s_min, ln s_max].
        s_min: Lower truncation; the piece below it is added analytically.
        s_max: Upper truncation; the piece above it is added analytically.
    """
    nodes: int = RAY_QUADRATURE_CONFIG["nodes"]
    s_min: float = RAY_QUADRATURE_CONFIG["s_min"]
    s_max: float = RAY_QUADRATURE_CONFIG["s_max"]

    def __post_init__(self) -> None:
        if not 0.0 < self.s_min < 1.0 < self.s_max:
            raise ValueError(f"ray quadrature needs s_min < 1 < s_max, got [{self.s_min}, {self.s_max}]")
        if self.nodes < 3:
            raise ValueError(f"ray quadrature needs at least 3 nodes, got {self.nodes}")

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes s_k and weights w_k with Σ w_k g(s_k) ≈ ∫ g(s) ds / s."""
        sigma = np.linspace(np.log(self.s_min), np.log(self.s_max), self.nodes)
        weights = np.full(self.nodes, sigma[1] - sigma[0])
        weights[[0, -1]] *= 0.5
        return np.exp(sigma), weights

    def refined(self) -> RayQuadrature:
        # 2M-1 nodes keep every old node.
        return RayQuadrature(2 * self.nodes - 1, self.s_min, self.s_max)


@dataclass(frozen=True)
class PowerResult:
    """A quadrature-evaluated operator and its error bookkeeping."""
    operator: ModelOperator
    tail_estimate: float
    change: float
    nodes: int


def _check_theta(theta: float) -> None:
    if not 0.0 < theta < 1.0:
        raise ExponentOutOfRange(f"exponent must lie in (0, 1), got {theta}")


def ensure_sectorial_spectrum(A: ModelOperator) -> None:
    """Raise NotSectorial when some eigenvalue lies on (-∞, 0]."""
    eig = A.eigenvalues()
    scale = max(spectral_scale(A), 1.0)
    on_cut = (np.abs(eig.imag) <= 1e-12 * scale) & (eig.real <= 1e-12 * scale)
    if np.any(on_cut):
        raise NotSectorial(f"eigenvalue {eig[np.argmax(on_cut)]} lies on (-inf, 0]")


def _to_operator(A: ModelOperator, M: np.ndarray) -> ModelOperator:
    if A.is_diagonal:
        return ModelOperator.diagonal(np.diag(M))
    return ModelOperator.dense(M)


def _inverse(A: ModelOperator) -> np.ndarray:
    return resolvent_apply(A, 0.0, np.eye(A.dim, dtype=complex))


def _converge(
    evaluate: Callable[[RayQuadrature], tuple[np.ndarray, float]],
    quad: RayQuadrature,
    what: str,
) -> tuple[np.ndarray, float, float, int]:
    tolerance = RAY_QUADRATURE_CONFIG["tolerance"]
    value, tail = evaluate(quad)
    change = np.inf
    for _ in range(RAY_QUADRATURE_CONFIG["max_doublings"]):
        quad = quad.refined()
        refined, tail = evaluate(quad)
        scale = max(float(np.linalg.norm(refined)), np.finfo(float).tiny)
        change = float(np.linalg.norm(refined - value)) / scale
        value = refined
        if change <= tolerance:
            logger.debug("%s converged with %d nodes, change %.3e", what, quad.nodes, change)
            return value, tail, change, quad.nodes
    raise QuadratureNotConverged(change, f"{what} did not converge (relative change {change:.3e})")


def balakrishnan_power_report(
    A: ModelOperator, theta: float, quad: Optional[RayQuadrature] = None
) -> PowerResult:
    """A^{-θ} = (sin πθ/π) ∫₀^∞ s^{-θ}(A + s)^{-1} ds with analytic tails."""
    _check_theta(theta)
    ensure_sectorial_spectrum(A)
    inverse = _inverse(A)
    factor = np.sin(np.pi * theta) / np.pi
    identity = np.eye(A.dim, dtype=complex)
    M = A.matrix()

    def evaluate(q: RayQuadrature) -> tuple[np.ndarray, float]:
        s, w = q.points()
        R, _ = resolvent_matrices(A, s)
        body = np.tensordot(w * s ** (1.0 - theta), R, axes=1)
        upper = q.s_max**-theta / theta * identity - M * q.s_max ** (-theta - 1.0) / (theta + 1.0)
        lower = inverse * q.s_min ** (1.0 - theta) / (1.0 - theta) - inverse @ inverse * q.s_min ** (2.0 - theta) / (2.0 - theta)
        tail = factor * (float(np.linalg.norm(upper, 2)) + float(np.linalg.norm(lower, 2)))
        return factor * (body + upper + lower), tail

    value, tail, change, nodes = _converge(evaluate, quad or RayQuadrature(), "balakrishnan power")
    return PowerResult(_to_operator(A, value), tail, change, nodes)


def balakrishnan_power(A: ModelOperator, theta: float, quad: Optional[RayQuadrature] = None) -> ModelOperator:
    return balakrishnan_power_report(A, theta, quad).operator


def q_operator(A: ModelOperator, z: complex, theta: float, quad: Optional[RayQuadrature] = None) -> ModelOperator:
    """Q_A(z) = (sin πθ/π) ∫₀^∞ s^{-θ}(z - s)^{-1}(A + s)^{-1} ds for z off [0, ∞)."""
    _check_theta(theta)
    z = complex(z)
    if abs(z.imag) <= 1e-12 * max(1.0, abs(z)) and z.real >= 0.0:
        raise BranchCutViolation(f"z={z} lies on the integration ray [0, inf)")
    ensure_sectorial_spectrum(A)
    inverse = _inverse(A)
    factor = np.sin(np.pi * theta) / np.pi
    identity = np.eye(A.dim, dtype=complex)

    def evaluate(q: RayQuadrature) -> tuple[np.ndarray, float]:
        s, w = q.points()
        R, _ = resolvent_matrices(A, s)
        body = np.tensordot(w * s ** (1.0 - theta) / (z - s), R, axes=1)
        upper = -(q.s_max ** (-theta - 1.0)) / (theta + 1.0) * identity
        lower = inverse * q.s_min ** (1.0 - theta) / ((1.0 - theta) * z)
        tail = factor * (float(np.linalg.norm(upper, 2)) + float(np.linalg.norm(lower, 2)))
        return factor * (body + upper + lower), tail

    value, _, _, _ = _converge(evaluate, quad or RayQuadrature(), "Q operator")
    return _to_operator(A, value)


def pv_projection(A: ModelOperator, a: float, u: np.ndarray, R: float, M: Optional[int] = None) -> np.ndarray:
    """(1/iπ) ∫ over Re λ = a, |Im λ| ≤ R of (A + λ)^{-1}u dλ.

    Tends to u at rate O(1/R) when the closed right half-plane Re λ ≥ a
    avoids -σ(A).
    """
    u = np.asarray(u, dtype=complex)
    if not R > 0:
        raise ValueError(f"truncation radius must be positive, got {R}")
    eig = A.eigenvalues()
    distance = float(np.min(eig.real)) + a
    if distance <= 0.0:
        raise SingularResolvent(complex(-np.min(eig.real)), "line of integration meets the spectrum")
    if M is None:
        M = int(np.ceil(2.0 * R / (distance / 4.0)))
        M += M % 2
    if not np.any(u):
        return np.zeros_like(u)
    y = np.linspace(-R, R, M + 1)
    weights = np.full(M + 1, 2.0 * R / M)
    weights[[0, -1]] *= 0.5
    shifts = a + 1j * y
    rhs = np.broadcast_to(u[None, :, None], (shifts.size, A.dim, 1))
    X = resolvent_apply_batch(A, shifts, rhs)[:, :, 0]
    return (weights @ X) / np.pi


def imaginary_power_oracle(A: ModelOperator, t: float) -> ModelOperator:
    """A^{it} = V exp(it log Λ) V^{-1} with the principal logarithm."""
    ensure_sectorial_spectrum(A)
    return matrix_function_oracle(A, lambda z: cmath.exp(1j * t * cmath.log(z)))


def principal_sqrt(Lam: ModelOperator) -> ModelOperator:
    """Principal square root; falls back to a Schur-based root for defective Λ."""
    try:
        return matrix_function_oracle(Lam, cmath.sqrt)
    except IllConditioned as e:
        logger.info("eigenvector basis ill-conditioned (%s), using Schur square root", e)
        return ModelOperator.dense(np.asarray(sqrtm(Lam.matrix()), dtype=complex))


def fractional_power(A: ModelOperator, theta: float, quad: Optional[RayQuadrature] = None) -> ModelOperator:
    """A^θ = A · A^{-(1-θ)} for θ ∈ (0, 1)."""
    _check_theta(theta)
    return A.compose(balakrishnan_power(A, 1.0 - theta, quad))
