"""Seeded random problems shared by the verification checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from ..linop import ModelOperator
from ..timecalc import GridFunction, TimeGrid


@dataclass(frozen=True)
class SuiteProblem:
    """A space operator with a smooth forcing that vanishes to second order at t = 0."""
    A: ModelOperator
    f: GridFunction


def random_operator(
    rng: np.random.Generator, dim: int, dense: bool, low: float = 0.5, high: float = 3.0
) -> ModelOperator:
    """Real spectrum with |a| in [low, high] and random signs; dense variants get a mild random basis."""
    spectrum = rng.uniform(low, high, dim) * rng.choice((-1.0, 1.0), dim)
    if not dense:
        return ModelOperator.diagonal(spectrum)
    V = np.eye(dim) + 0.25 * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(dim)
    return ModelOperator.dense(V @ np.diag(spectrum) @ np.linalg.inv(V))


def random_positive_operator(rng: np.random.Generator, dim: int, low: float = 0.2, high: float = 4.0) -> ModelOperator:
    """Diagonalizable operator with spectrum in [low, high]."""
    spectrum = rng.uniform(low, high, dim)
    V = np.eye(dim) + 0.3 * rng.standard_normal((dim, dim)) / np.sqrt(dim)
    return ModelOperator.dense(V @ np.diag(spectrum) @ np.linalg.inv(V))


def random_w0_forcing(rng: np.random.Generator, grid: TimeGrid, dim: int) -> GridFunction:
    """f(t) = a t² + b t³ with complex a, b of modulus at most one."""
    a, b = (rng.uniform(0.2, 1.0, dim) * np.exp(2j * np.pi * rng.uniform(size=dim)) for _ in range(2))
    t = grid.nodes[:, None]
    return GridFunction(grid, a * t**2 + b * t**3)


def linear_suite(rng: np.random.Generator, grid: TimeGrid, count: int = 4, max_dim: int = 3) -> List[SuiteProblem]:
    """Alternating diagonal and dense problems of dimension 1..max_dim."""
    problems = []
    for k in range(count):
        dim = 1 + k % max_dim
        A = random_operator(rng, dim, dense=bool(k % 2))
        problems.append(SuiteProblem(A, random_w0_forcing(rng, grid, dim)))
    return problems
