"""Tests for time grids, the discrete resolvent of B and Sobolev norms."""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.services.errors import DimensionMismatch, ExponentOutOfRange
from src.services.timecalc import (
    GridFunction,
    SobolevParams,
    TimeGrid,
    b_inverse_apply,
    b_resolvent_apply,
    brnd_bound,
    finite_diff_derivative,
    initial_traces,
    sobolev_norm,
    sobolev_norm_report,
    sobolev_seminorm,
    sobolev_seminorm_report,
    verify_brnd,
)


def test_grid_basics():
    grid = TimeGrid(2.0, 8)
    assert grid.h == 0.25
    assert np.isclose(np.sum(grid.weights), 2.0)
    assert grid.refined().N == 16
    with pytest.raises(ValueError):
        TimeGrid(1.0, 4)
    with pytest.raises(ValueError):
        TimeGrid(0.0, 16)
    print("✓ Time grid")


def test_grid_function_csv():
    grid = TimeGrid(1.0, 8)
    u = GridFunction.from_callable(grid, lambda t: np.stack([t, 1j * t**2], axis=1))
    text = u.to_csv()
    assert text.splitlines()[0] == "t,re_0,im_0,re_1,im_1"
    again = GridFunction.from_csv(text)
    assert np.allclose(again.values, u.values, atol=1e-15)
    with pytest.raises(DimensionMismatch):
        GridFunction(grid, np.zeros((5, 1)))
    print("✓ Grid function CSV")


def test_b_inverse_of_constant():
    """B^{-1}1 = t, exact under the trapezoid rule, and 0 at t = 0."""
    grid = TimeGrid(1.0, 64)
    u = b_inverse_apply(GridFunction(grid, np.ones((65, 1))))
    assert u.values[0, 0] == 0.0
    assert np.allclose(u.values[:, 0], grid.nodes, atol=1e-12)
    print("✓ B^{-1} of a constant")


def test_b_resolvent_exponential():
    """(B + 1)^{-1}1 = 1 - e^{-t} to O(h²)."""
    grid = TimeGrid(1.0, 256)
    u = b_resolvent_apply(1.0, GridFunction(grid, np.ones((257, 1))))
    exact = 1.0 - np.exp(-grid.nodes)
    assert np.max(np.abs(u.values[:, 0] - exact)) < 1e-5
    print("✓ (B + 1)^{-1} of a constant")


def test_b_resolvent_causality():
    grid = TimeGrid(1.0, 64)
    rng = np.random.default_rng(3)
    values = rng.standard_normal((65, 2)) + 0j
    late = values.copy()
    late[40:] += 5.0
    a = b_resolvent_apply(0.5 + 2j, GridFunction(grid, values))
    b = b_resolvent_apply(0.5 + 2j, GridFunction(grid, late))
    assert np.array_equal(a.values[:40], b.values[:40])
    print("✓ Causality of (B + λ)^{-1}")


def test_brnd_bound_values():
    assert np.isclose(brnd_bound(1.0, 1.0), 0.632121, atol=1e-6)
    assert brnd_bound(1j, 1.0) == 1.0
    assert np.isclose(brnd_bound(10.0, 1.0), 0.0999955, atol=1e-7)
    print("✓ Exponential bounds")


def test_verify_brnd():
    grid = TimeGrid(1.0, 64)
    for lam in (1.0, 3j, 0.5 - 2j, 10.0):
        report = verify_brnd(lam, grid)
        assert report.passed, f"λ={lam}: ratio {report.ratio}"
        assert report.ratio <= 1.0 + 10.0 / grid.N
    with pytest.raises(ValueError):
        verify_brnd(1.0, grid, probes=4)
    print("✓ Discrete resolvent norms of B")


def test_seminorm_of_linear_function():
    """[t]_{W^{s,2}(0,1)}² = 2/((2-2s)(3-2s))."""
    grid = TimeGrid(1.0, 256)
    u = GridFunction.from_callable(grid, lambda t: t)
    assert abs(sobolev_seminorm(u, SobolevParams(0.5)) - 1.0) < 2e-2
    quarter = sobolev_seminorm_report(u, SobolevParams(0.25))
    assert abs(quarter.seminorm**2 - 0.533333) < 1e-2
    print("✓ Seminorm of u(t) = t")


def test_sobolev_norm_and_traces():
    grid = TimeGrid(1.0, 256)
    u = GridFunction.from_callable(grid, lambda t: t)
    assert abs(sobolev_norm(u, SobolevParams(0.5)) - 1.57735) < 2e-2
    report = sobolev_norm_report(u, SobolevParams(0.5, k=1))
    assert report.trace_flags["trace_0"]
    assert "weighted_trace_finite" in report.trace_flags
    assert not report.trace_flags["weighted_trace_finite"]
    assert not report.in_w0
    print("✓ Sobolev norm and W₀ traces")


def test_initial_traces():
    grid = TimeGrid(1.0, 128)
    u = GridFunction.from_callable(grid, lambda t: t**2)
    value, slope = initial_traces(u, 2)
    assert value == 0.0
    assert slope < 1e-10
    print("✓ Initial traces")


def test_finite_diff_derivative():
    grid = TimeGrid(1.0, 64)
    u = GridFunction.from_callable(grid, lambda t: t**3)
    assert finite_diff_derivative(u, 0) is u
    first = finite_diff_derivative(u, 1).values[:, 0]
    assert np.allclose(first, 3.0 * grid.nodes**2, atol=1e-3)
    second = finite_diff_derivative(u, 2).values[:, 0]
    assert np.allclose(second, 6.0 * grid.nodes, atol=1e-6)
    with pytest.raises(ValueError):
        finite_diff_derivative(u, 3)
    print("✓ Finite-difference derivatives")


def test_sobolev_params_range():
    with pytest.raises(ExponentOutOfRange):
        SobolevParams(1.0)
    with pytest.raises(ExponentOutOfRange):
        SobolevParams(0.5, p=1.0)
    with pytest.raises(ExponentOutOfRange):
        SobolevParams(0.5, k=3)
    print("✓ Sobolev parameter ranges")
