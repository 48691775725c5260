"""Tests for model operators, resolvents and operator norms."""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.services.errors import DimensionMismatch, FunctionSingularOnSpectrum, SingularResolvent
from src.services.linop import (
    ModelOperator,
    VectorNormSpec,
    eigendecompose,
    matrix_function_oracle,
    operator_norm,
    operator_norm_bounds,
    resolvent_apply,
    resolvent_norms,
)


def test_diagonal_resolvent():
    """(A + λ)^{-1} of a diagonal operator is 1/(a_j + λ)."""
    A = ModelOperator.diagonal([1.0, 2.0])
    u = resolvent_apply(A, 1.0, np.array([1.0, 1.0]))
    assert np.allclose(u, [0.5, 1.0 / 3.0], atol=1e-15)
    print("✓ Diagonal resolvent")


def test_dense_matches_diagonal():
    """A diagonal operator behaves like the dense matrix with that diagonal."""
    spectrum = [1.0 + 1j, -2.0, 3.5]
    f = np.array([1.0, 2.0j, -1.0])
    lam = 0.3 - 0.7j
    diagonal = resolvent_apply(ModelOperator.diagonal(spectrum), lam, f)
    dense = resolvent_apply(ModelOperator.dense(np.diag(spectrum)), lam, f)
    assert np.allclose(diagonal, dense, atol=1e-12)
    print("✓ Dense and diagonal storage agree")


def test_resolvent_identity():
    """R(λ) - R(μ) = (μ - λ) R(λ) R(μ)."""
    rng = np.random.default_rng(0)
    A = ModelOperator.dense(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    lam, mu = 4.0 + 1j, -3.0 + 5j
    identity = np.eye(3, dtype=complex)
    R_lam = resolvent_apply(A, lam, identity)
    R_mu = resolvent_apply(A, mu, identity)
    gap = np.linalg.norm(R_lam - R_mu - (mu - lam) * R_lam @ R_mu)
    assert gap <= 1e-8 * np.linalg.norm(R_lam)
    print("✓ Resolvent identity")


def test_singular_resolvent():
    A = ModelOperator.diagonal([1.0, 2.0])
    with pytest.raises(SingularResolvent):
        resolvent_apply(A, -1.0, np.ones(2))
    norms = resolvent_norms(A, np.array([-1.0, 1.0]))
    assert np.isinf(norms[0]) and np.isclose(norms[1], 0.5)
    print("✓ Singular shifts detected")


def test_dimension_mismatch():
    A = ModelOperator.diagonal([1.0, 2.0])
    with pytest.raises(DimensionMismatch):
        resolvent_apply(A, 1.0, np.ones(3))
    with pytest.raises(DimensionMismatch):
        ModelOperator(dim=2, kind=A.kind, spectrum=np.ones(3))
    print("✓ Dimension mismatches rejected")


def test_normal_operator_norm():
    """The spectral norm of a normal operator is its spectral radius."""
    A = ModelOperator.diagonal([3.0, -4.0, 1j])
    assert np.isclose(operator_norm(A), 4.0)
    Q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((3, 3)))
    normal = ModelOperator.dense(Q @ np.diag([3.0, -4.0, 2.0]) @ Q.T)
    assert np.isclose(operator_norm(normal), 4.0, atol=1e-10)
    print("✓ Normal operator norms")


def test_lp_norm_bounds():
    """For p ≠ 2 the probe value never exceeds the column/row bound."""
    A = ModelOperator.dense([[1.0, 2.0], [0.0, 1.0]])
    bounds = operator_norm_bounds(A, VectorNormSpec(3.0))
    assert not bounds.exact
    assert bounds.lower <= bounds.upper * (1.0 + 1e-12)
    with pytest.raises(ValueError):
        VectorNormSpec(1.0)
    print("✓ L^p operator norm bounds")


def test_matrix_function_oracle():
    A = ModelOperator.dense([[2.0, 1.0], [0.0, 3.0]])
    decomposition = eigendecompose(A)
    assert decomposition.condition >= 1.0
    squared = matrix_function_oracle(A, lambda z: z * z)
    assert np.allclose(squared.matrix(), A.matrix() @ A.matrix(), atol=1e-10)
    with pytest.raises(FunctionSingularOnSpectrum):
        matrix_function_oracle(ModelOperator.diagonal([0.0, 1.0]), lambda z: 1.0 / z)
    print("✓ Eigen oracle for matrix functions")


def test_operator_algebra():
    A = ModelOperator.diagonal([1.0, 2.0])
    assert np.allclose(A.square().spectrum, [1.0, 4.0])
    assert np.allclose(A.shifted(1.0).spectrum, [2.0, 3.0])
    assert np.allclose(A.scaled(1j).spectrum, [1j, 2j])
    dense = ModelOperator.dense([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(dense.compose(A).matrix(), [[0.0, 2.0], [1.0, 0.0]])
    print("✓ Operator algebra")
