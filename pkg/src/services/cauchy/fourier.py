"""Fourier-line evaluation of J± as a weighted Fourier multiplier."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import fft

from ...config.defaults import SOLVER_CONFIG
from ...config.models import Sign
from ..errors import GammaTooSmall
from ..linop import ModelOperator, resolvent_apply_batch
from ..timecalc import GridFunction, b_inverse_apply
from ..timecalc.derivatives import fd_first
from .contour import strip_offset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FourierBranches:
    """Both branch evaluations of J±g.

    Attributes:
        branch0: From D₀ = -B.
        branch1: From D₁ = ±iA, including its B^{-1}g offset.
        average: Mean of the two branches.
        difference: Multiplier part of branch 1 minus branch 0; equals -B^{-1}g.
        gamma: Exponential weight.
        length: FFT length.
    """
    branch0: GridFunction
    branch1: GridFunction
    average: GridFunction
    difference: GridFunction
    gamma: float
    length: int


def _multiplier_solve(A: ModelOperator, sign: Sign, weighted: np.ndarray, gamma: float, h: float) -> np.ndarray:
    """e^{γt}·F⁻¹[(±s ∓ iγ)^{-1}(A ± s ∓ iγ)^{-1} F[weighted]] on the padded grid."""
    length = weighted.shape[0]
    s = 2.0 * np.pi * fft.fftfreq(length, h)
    shift = sign.factor * (s - 1j * gamma)
    spectrum = fft.fft(weighted, axis=0)
    rhs = spectrum[:, :, None]
    solved = resolvent_apply_batch(A, shift, rhs)[:, :, 0] / shift[:, None]
    return fft.ifft(solved, axis=0)


def fourier_line_branches(
    A: ModelOperator, sign: Sign, g: GridFunction, gamma: Optional[float] = None, M: Optional[int] = None
) -> FourierBranches:
    """J±g from both derivative branches, with g zero-extended past T.

    Raises:
        GammaTooSmall: γ does not exceed max|Im σ(A)|.
    """
    width = float(np.max(np.abs(A.eigenvalues().imag)))
    gamma = strip_offset(A) if gamma is None else float(gamma)
    if gamma <= width:
        raise GammaTooSmall(f"γ={gamma} must exceed max|Im σ(A)| = {width}")
    grid = g.grid
    h = grid.h
    count = grid.N + 1
    decay = SOLVER_CONFIG["fourier_decay_margin"] / (gamma - width)
    length = fft.next_fast_len(int(max(M or 0, 2 * count, np.ceil((grid.T + decay) / h))))

    t = grid.nodes
    damp = np.exp(-gamma * t)[:, None]
    ends = np.ones(count)
    ends[[0, -1]] = 0.5
    derivatives = {
        0: -fd_first(g.values, h),
        1: sign.factor * 1j * A.apply(g.values),
    }
    parts = {}
    for j, D in derivatives.items():
        padded = np.zeros((length, g.dim), dtype=complex)
        padded[:count] = ends[:, None] * damp * D
        parts[j] = _multiplier_solve(A, sign, padded, gamma, h)[:count] * np.exp(gamma * t)[:, None]
        parts[j][0] = 0.0

    offset = b_inverse_apply(g).values
    branch0 = g.with_values(parts[0])
    branch1 = g.with_values(parts[1] + offset)
    average = g.with_values(0.5 * (parts[0] + parts[1] + offset))
    difference = g.with_values(parts[1] - parts[0])
    logger.debug("fourier line: gamma=%.4g length=%d", gamma, length)
    return FourierBranches(branch0, branch1, average, difference, gamma, length)


def fourier_line_apply(
    A: ModelOperator, sign: Sign, g: GridFunction, gamma: Optional[float] = None, M: Optional[int] = None
) -> GridFunction:
    return fourier_line_branches(A, sign, g, gamma, M).average
