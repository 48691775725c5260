"""Finite-dimensional model operators and vector norms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ...config.models import OperatorKind
from ..errors import DimensionMismatch


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class ModelOperator:
    """A complex linear operator on ℂ^dim.

    Attributes:
        dim: State dimension.
        kind: Dense matrix or diagonal spectrum. A diagonal operator behaves
            exactly like the dense matrix with that diagonal.
        entries: dim×dim matrix (dense kind) or None.
        spectrum: Diagonal values (diagonal kind) or None.
    """
    dim: int
    kind: OperatorKind
    entries: Optional[np.ndarray] = None
    spectrum: Optional[np.ndarray] = None
    _matrix: np.ndarray = field(init=False, repr=False)
    _eigenvalues: Optional[np.ndarray] = field(init=False, default=None, repr=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise DimensionMismatch(f"dimension must be positive, got {self.dim}")
        if self.kind is OperatorKind.DIAGONAL:
            if self.spectrum is None:
                raise DimensionMismatch("diagonal operator requires a spectrum")
            spectrum = _readonly(np.ravel(self.spectrum))
            if spectrum.size != self.dim:
                raise DimensionMismatch(f"spectrum has {spectrum.size} values, dim is {self.dim}")
            object.__setattr__(self, "spectrum", spectrum)
            object.__setattr__(self, "entries", None)
            object.__setattr__(self, "_matrix", _readonly(np.diag(spectrum)))
        else:
            if self.entries is None:
                raise DimensionMismatch("dense operator requires entries")
            entries = _readonly(self.entries)
            if entries.shape != (self.dim, self.dim):
                raise DimensionMismatch(
                    f"entries have shape {entries.shape}, expected ({self.dim}, {self.dim})"
                )
            object.__setattr__(self, "entries", entries)
            object.__setattr__(self, "spectrum", None)
            object.__setattr__(self, "_matrix", entries)

    @classmethod
    def dense(cls, entries: Sequence[Sequence[complex]] | np.ndarray) -> ModelOperator:
        entries = np.atleast_2d(np.asarray(entries, dtype=complex))
        return cls(dim=entries.shape[0], kind=OperatorKind.DENSE, entries=entries)

    @classmethod
    def diagonal(cls, spectrum: Sequence[complex] | np.ndarray) -> ModelOperator:
        spectrum = np.atleast_1d(np.asarray(spectrum, dtype=complex))
        return cls(dim=spectrum.size, kind=OperatorKind.DIAGONAL, spectrum=spectrum)

    @classmethod
    def identity(cls, dim: int) -> ModelOperator:
        return cls.diagonal(np.ones(dim))

    @classmethod
    def zeros(cls, dim: int) -> ModelOperator:
        return cls.diagonal(np.zeros(dim))

    @property
    def is_diagonal(self) -> bool:
        return self.kind is OperatorKind.DIAGONAL

    def matrix(self) -> np.ndarray:
        """Dense read-only matrix of the operator."""
        return self._matrix

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply to a vector or to the rows of an (n, dim) array."""
        x = np.asarray(x, dtype=complex)
        if x.shape[-1] != self.dim:
            raise DimensionMismatch(f"vector of length {x.shape[-1]} for dim {self.dim}")
        if self.is_diagonal:
            return x * self.spectrum
        return x @ self._matrix.T

    def scaled(self, factor: complex) -> ModelOperator:
        if self.is_diagonal:
            return ModelOperator.diagonal(factor * self.spectrum)
        return ModelOperator.dense(factor * self._matrix)

    def shifted(self, shift: complex) -> ModelOperator:
        if self.is_diagonal:
            return ModelOperator.diagonal(self.spectrum + shift)
        return ModelOperator.dense(self._matrix + shift * np.eye(self.dim))

    def square(self) -> ModelOperator:
        if self.is_diagonal:
            return ModelOperator.diagonal(self.spectrum**2)
        return ModelOperator.dense(self._matrix @ self._matrix)

    def compose(self, other: ModelOperator) -> ModelOperator:
        if other.dim != self.dim:
            raise DimensionMismatch(f"cannot compose dim {self.dim} with dim {other.dim}")
        if self.is_diagonal and other.is_diagonal:
            return ModelOperator.diagonal(self.spectrum * other.spectrum)
        return ModelOperator.dense(self._matrix @ other.matrix())

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues, computed once per operator."""
        if self._eigenvalues is None:
            values = self.spectrum if self.is_diagonal else np.linalg.eigvals(self._matrix)
            object.__setattr__(self, "_eigenvalues", _readonly(values))
        return self._eigenvalues

    def __repr__(self) -> str:
        if self.is_diagonal:
            return f"ModelOperator.diagonal({np.array2string(self.spectrum, precision=4)})"
        return f"ModelOperator.dense(dim={self.dim})"


@dataclass(frozen=True, slots=True)
class VectorNormSpec:
    """ℓ^p norm on ℂ^dim, Euclidean by default.

    Attributes:
        p: Exponent in (1, ∞).
    """
    p: float = 2.0

    def __post_init__(self) -> None:
        if not self.p > 1.0:
            raise ValueError(f"norm exponent must exceed 1, got {self.p}")

    @property
    def is_euclidean(self) -> bool:
        return self.p == 2.0

    def norm(self, x: np.ndarray, axis: int = -1) -> np.ndarray:
        return np.linalg.norm(np.asarray(x), ord=self.p, axis=axis)


EUCLIDEAN = VectorNormSpec()


@dataclass(frozen=True, slots=True)
class EigenDecomposition:
    """A = V diag(eigenvalues) V^{-1}.

    Attributes:
        eigenvalues: Complex eigenvalues.
        vectors: Right eigenvectors as columns.
        condition: 2-norm condition number of ``vectors`` (≥ 1).
    """
    eigenvalues: np.ndarray
    vectors: np.ndarray
    condition: float
