"""Resolvent of the derivation operator B = d/dt with zero initial trace."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .grid import GridFunction, TimeGrid

logger = logging.getLogger(__name__)


def b_resolvent_batch(lams: np.ndarray, values: np.ndarray, h: float) -> np.ndarray:
    """(B+λ)^{-1} for many λ at once by the causal trapezoid recursion.

    y_0 = 0, y_j = E y_{j-1} + (h/2)(E u_{j-1} + u_j) with E = e^{-λh}, which is
    the composite trapezoid rule for ∫₀^t e^{λ(x-t)} u(x) dx.

    Args:
        lams: (m,) complex shifts.
        values: (N+1, dim) samples of u.
        h: grid step.

    Returns:
        (m, N+1, dim) array.
    """
    lams = np.atleast_1d(np.asarray(lams, dtype=complex))
    values = np.asarray(values, dtype=complex)
    steps = values.shape[0]
    E = np.exp(-lams * h)[:, None]
    out = np.zeros((lams.size, steps, values.shape[1]), dtype=complex)
    half = 0.5 * h
    for j in range(1, steps):
        out[:, j, :] = E * out[:, j - 1, :] + half * (E * values[j - 1] + values[j])
    return out


def b_resolvent_apply(lam: complex, u: GridFunction) -> GridFunction:
    """((B+λ)^{-1}u)(t) = ∫₀^t e^{λ(x-t)} u(x) dx; the value at t=0 is exactly 0."""
    out = b_resolvent_batch(np.array([lam]), u.values, u.grid.h)[0]
    return u.with_values(out)


def b_inverse_apply(u: GridFunction) -> GridFunction:
    """B^{-1}u = ∫₀^t u, the λ = 0 case."""
    return b_resolvent_apply(0.0, u)


def b_resolvent_matrix(lam: complex, grid: TimeGrid) -> np.ndarray:
    """Lower-triangular matrix K with (B+λ)^{-1}u = K u on the nodes."""
    return b_resolvent_batch(np.array([lam]), np.eye(grid.N + 1), grid.h)[0]


def brnd_bound(lam: complex, T: float) -> float:
    """(1 - e^{-Re(λ)T}) / Re(λ), or T when λ is purely imaginary."""
    a = complex(lam).real
    if a == 0.0:
        return float(T)
    return float(-np.expm1(-a * T) / a)


@dataclass(frozen=True, slots=True)
class BrndReport:
    """Measured discrete ‖(B+λ)^{-1}‖ against the exponential bound.

    Attributes:
        bound: Exponential bound for the horizon.
        measured: Largest observed ‖(B+λ)^{-1}u‖_p / ‖u‖_p.
        ratio: measured / bound.
        slack: Allowed excess 10/N.
        passed: ratio ≤ 1 + slack.
    """
    lam: complex
    bound: float
    measured: float
    ratio: float
    slack: float
    probes: int
    passed: bool


def verify_brnd(lam: complex, grid: TimeGrid, probes: int = 16, seed: int = 0, p: float = 2.0) -> BrndReport:
    """Check the discrete resolvent norm of B against its exponential bound.

    Random complex probes are complemented by the structured worst cases
    (constants and the conjugate kernel). For p = 2 the exact discrete norm
    from the singular values of the weighted convolution matrix is included.
    """
    if probes < 16:
        raise ValueError(f"need at least 16 probes, got {probes}")
    rng = np.random.default_rng(seed)
    t = grid.nodes
    columns = [
        rng.standard_normal(grid.N + 1) + 1j * rng.standard_normal(grid.N + 1)
        for _ in range(probes)
    ]
    columns.append(np.ones(grid.N + 1, dtype=complex))
    columns.append(np.exp(np.conj(complex(lam)) * (t - grid.T)))
    columns.append(np.exp(-complex(lam) * t))
    U = np.stack(columns, axis=1)
    K = b_resolvent_matrix(lam, grid)
    weights = grid.weights

    def lp(values: np.ndarray) -> np.ndarray:
        return np.sum(weights[:, None] * np.abs(values) ** p, axis=0) ** (1.0 / p)

    measured = float(np.max(lp(K @ U) / lp(U)))
    if p == 2.0:
        root = np.sqrt(weights)
        weighted = root[:, None] * K / root[None, :]
        measured = max(measured, float(np.linalg.norm(weighted, 2)))
    bound = brnd_bound(lam, grid.T)
    ratio = measured / bound
    slack = 10.0 / grid.N
    logger.debug("brnd λ=%s bound=%.6g measured=%.6g", lam, bound, measured)
    return BrndReport(complex(lam), bound, measured, ratio, slack, len(columns), ratio <= 1.0 + slack)
