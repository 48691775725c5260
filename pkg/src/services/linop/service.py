"""Resolvent solves, operator norms and the eigendecomposition oracle."""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from ...config.defaults import LINALG_CONFIG
from ..errors import DimensionMismatch, FunctionSingularOnSpectrum, IllConditioned, SingularResolvent
from .operator import EUCLIDEAN, EigenDecomposition, ModelOperator, VectorNormSpec

logger = logging.getLogger(__name__)

SINGULAR_THRESHOLD = LINALG_CONFIG["singular_threshold"]


def _check_rhs(A: ModelOperator, f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.ndim == 0 or f.shape[0] != A.dim:
        raise DimensionMismatch(f"right-hand side of shape {f.shape} for dim {A.dim}")
    return f


def resolvent_apply(A: ModelOperator, lam: complex, f: np.ndarray) -> np.ndarray:
    """Solve (A + λ)u = f for a vector or a (dim, k) block of vectors."""
    f = _check_rhs(A, f)
    lam = complex(lam)
    if A.is_diagonal:
        d = A.spectrum + lam
        scale = float(np.max(np.abs(d)))
        if scale == 0.0 or np.any(np.abs(d) <= SINGULAR_THRESHOLD * scale):
            raise SingularResolvent(lam)
        return f / (d if f.ndim == 1 else d[:, None])

    M = A.matrix() + lam * np.eye(A.dim)
    scale = float(np.linalg.norm(M, 1))
    if scale == 0.0:
        raise SingularResolvent(lam)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(M, check_finite=False)
    if np.min(np.abs(np.diag(lu))) <= SINGULAR_THRESHOLD * scale:
        raise SingularResolvent(lam)
    u = lu_solve((lu, piv), f, check_finite=False)
    for _ in range(LINALG_CONFIG["refinement_steps"]):
        u = u + lu_solve((lu, piv), f - M @ u, check_finite=False)
    return u


def _singular_shifts(A: ModelOperator, shifts: np.ndarray) -> np.ndarray:
    """Mask of shifts for which -shift is numerically an eigenvalue of A."""
    eig = A.eigenvalues()
    scale = spectral_scale(A) + np.abs(shifts)
    scale = np.where(scale == 0.0, 1.0, scale)
    distance = np.min(np.abs(eig[None, :] + shifts[:, None]), axis=1)
    return distance <= SINGULAR_THRESHOLD * scale


def spectral_scale(A: ModelOperator) -> float:
    """Cheap size of A: max |a_j| for diagonal operators, the 1-norm otherwise."""
    if A.is_diagonal:
        return float(np.max(np.abs(A.spectrum)))
    return float(np.linalg.norm(A.matrix(), 1))


def resolvent_apply_batch(A: ModelOperator, shifts: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve (A + shift_m) X_m = rhs_m for a stack of shifts.

    Args:
        shifts: (m,) complex shifts.
        rhs: (m, dim, k) right-hand sides.

    Returns:
        (m, dim, k) solutions, refined once.
    """
    shifts = np.atleast_1d(np.asarray(shifts, dtype=complex))
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.ndim != 3 or rhs.shape[0] != shifts.size or rhs.shape[1] != A.dim:
        raise DimensionMismatch(f"batched right-hand side of shape {rhs.shape}")
    singular = _singular_shifts(A, shifts)
    if np.any(singular):
        raise SingularResolvent(shifts[np.argmax(singular)])
    if A.is_diagonal:
        return rhs / (A.spectrum[None, :] + shifts[:, None])[:, :, None]
    stack = A.matrix()[None, :, :] + shifts[:, None, None] * np.eye(A.dim)[None, :, :]
    solution = np.linalg.solve(stack, rhs)
    for _ in range(LINALG_CONFIG["refinement_steps"]):
        solution = solution + np.linalg.solve(stack, rhs - stack @ solution)
    return solution


def resolvent_matrices(A: ModelOperator, shifts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stack of (A + shift)^{-1} and a mask of singular shifts (left as NaN)."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=complex))
    singular = _singular_shifts(A, shifts)
    inverses = np.full((shifts.size, A.dim, A.dim), np.nan, dtype=complex)
    regular = ~singular
    if A.is_diagonal:
        d = A.spectrum[None, :] + shifts[regular, None]
        idx = np.arange(A.dim)
        block = np.zeros((d.shape[0], A.dim, A.dim), dtype=complex)
        block[:, idx, idx] = 1.0 / d
        inverses[regular] = block
    elif np.any(regular):
        stack = A.matrix()[None, :, :] + shifts[regular, None, None] * np.eye(A.dim)[None, :, :]
        inverses[regular] = np.linalg.inv(stack)
    return inverses, singular


def stacked_norms(mats: np.ndarray, norm: VectorNormSpec = EUCLIDEAN) -> np.ndarray:
    """Induced norms of a stack of matrices.

    p=2 is exact; other p use the Riesz-Thorin bound ‖M‖₁^{1/p}‖M‖_∞^{1-1/p}.
    """
    if norm.is_euclidean:
        return np.linalg.norm(mats, ord=2, axis=(-2, -1))
    one = np.max(np.sum(np.abs(mats), axis=-2), axis=-1)
    inf = np.max(np.sum(np.abs(mats), axis=-1), axis=-1)
    return one ** (1.0 / norm.p) * inf ** (1.0 - 1.0 / norm.p)


def resolvent_norms(
    A: ModelOperator,
    shifts: np.ndarray,
    norm: VectorNormSpec = EUCLIDEAN,
    left: Optional[ModelOperator] = None,
) -> np.ndarray:
    """‖L(A + shift)^{-1}‖ for each shift (L = I by default); inf where singular."""
    inverses, singular = resolvent_matrices(A, shifts)
    result = np.full(singular.shape, np.inf)
    regular = ~singular
    if np.any(regular):
        mats = inverses[regular]
        if left is not None:
            mats = left.matrix()[None, :, :] @ mats
        result[regular] = stacked_norms(mats, norm)
    return result


@dataclass(frozen=True, slots=True)
class OperatorNormBounds:
    """Probe lower bound and column/row upper bound of an induced norm."""
    lower: float
    upper: float
    exact: bool


def operator_norm_bounds(
    A: ModelOperator, norm: VectorNormSpec = EUCLIDEAN, probes: Optional[int] = None, seed: int = 0
) -> OperatorNormBounds:
    M = A.matrix()
    if norm.is_euclidean:
        value = float(np.linalg.norm(M, 2))
        return OperatorNormBounds(value, value, True)
    if A.is_diagonal:
        value = float(np.max(np.abs(A.spectrum)))
        return OperatorNormBounds(value, value, True)
    upper = float(stacked_norms(M[None, :, :], norm)[0])
    probes = max(int(probes or LINALG_CONFIG["norm_probes"]), 64)
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((probes, A.dim)) + 1j * rng.standard_normal((probes, A.dim))
    _, _, vh = np.linalg.svd(M)
    X = np.vstack([X, np.eye(A.dim), vh[:1].conj()])
    ratios = norm.norm(X @ M.T) / norm.norm(X)
    return OperatorNormBounds(float(np.max(ratios)), upper, False)


def operator_norm(A: ModelOperator, norm: VectorNormSpec = EUCLIDEAN) -> float:
    """Induced operator norm; the upper bound when p ≠ 2 and A is not diagonal."""
    return operator_norm_bounds(A, norm).upper


def eigendecompose(A: ModelOperator) -> EigenDecomposition:
    if A.is_diagonal:
        return EigenDecomposition(np.array(A.spectrum), np.eye(A.dim, dtype=complex), 1.0)
    M = A.matrix()
    values, vectors = np.linalg.eig(M)
    condition = float(np.linalg.cond(vectors))
    limit = LINALG_CONFIG["condition_limit"]
    if not np.isfinite(condition) or condition >= limit:
        raise IllConditioned(condition)
    scale = max(float(np.linalg.norm(M, 2)), np.finfo(float).tiny)
    residual = float(np.linalg.norm(M @ vectors - vectors * values, 2))
    if residual > 1e-8 * condition * scale:
        raise IllConditioned(condition, f"eigen residual {residual:.3e} too large")
    return EigenDecomposition(values, vectors, condition)


def matrix_function_oracle(A: ModelOperator, func: Callable[[complex], complex]) -> ModelOperator:
    """V f(diag λ) V^{-1} from the eigendecomposition."""
    decomposition = eigendecompose(A)
    try:
        with np.errstate(all="ignore"):
            values = np.array([complex(func(complex(z))) for z in decomposition.eigenvalues])
    except (ZeroDivisionError, OverflowError, ValueError) as e:
        raise FunctionSingularOnSpectrum(str(e)) from e
    if not np.all(np.isfinite(values)):
        raise FunctionSingularOnSpectrum(f"function not finite on spectrum {decomposition.eigenvalues}")
    if A.is_diagonal:
        return ModelOperator.diagonal(values)
    V = decomposition.vectors
    X = np.linalg.solve(V.T, (V * values).T).T
    return ModelOperator.dense(X)
