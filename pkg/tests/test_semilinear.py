"""Tests for the semilinear fixed-point solver, its RK4 reference and the stability sweep."""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.services.errors import (
    BallExit,
    DimensionMismatch,
    FixedPointDiverged,
    GridMismatch,
    MaxIterationsExceeded,
    TraceConditionViolation,
)
from src.services.linop import ModelOperator
from src.services.semilinear import (
    CoefficientSource,
    FixedPointConfig,
    PolynomialNonlinearity,
    evaluate_F,
    fixed_point_solve,
    ode_oracle,
    shrinking_horizon_search,
    stability_constant_sweep,
)
from src.services.timecalc import GridFunction, TimeGrid

GRID = TimeGrid(1.0, 512)
SQUARE = CoefficientSource(poly=np.array([[0.0, 0.0, 1.0]]))
# u'' + u = t² + 1.5·10⁴u² blows up near t = 0.7
BLOW_UP = {2: CoefficientSource.constant(1.5e4)}


def _nonlinearity(forcing=SQUARE, terms=None, dim=1, grid=GRID):
    return PolynomialNonlinearity.from_sources(grid, dim, forcing, terms)


def test_coefficient_sources():
    grid = TimeGrid(1.0, 16)
    assert np.allclose(SQUARE.sample(grid)[:, 0], grid.nodes**2)
    assert np.all(CoefficientSource.constant(2.5).sample(grid) == 2.5)

    coarse = TimeGrid(1.0, 64)
    table = CoefficientSource(table=np.sin(coarse.nodes), T_table=1.0)
    assert np.max(np.abs(table.sample(grid)[:, 0] - np.sin(grid.nodes))) < 1e-8
    with pytest.raises(GridMismatch):
        table.sample(TimeGrid(2.0, 16))
    with pytest.raises(ValueError):
        CoefficientSource()
    print("✓ Coefficient sources")


def test_evaluate_F():
    """F(x, t) = 1 + 2x² at u = t gives 1 + 2t²."""
    grid = TimeGrid(1.0, 16)
    F = _nonlinearity(CoefficientSource.constant(1.0), {2: CoefficientSource.constant(2.0)}, grid=grid)
    u = GridFunction.from_callable(grid, lambda t: t)
    assert np.allclose(evaluate_F(F, u).values[:, 0], 1.0 + 2.0 * grid.nodes**2)
    assert F.degree == 2 and not F.is_linear
    with pytest.raises(DimensionMismatch):
        evaluate_F(F, GridFunction.zeros(grid, 2))
    with pytest.raises(DimensionMismatch):
        _nonlinearity(SQUARE, {2: CoefficientSource(poly=np.ones((3, 1)))}, dim=2, grid=grid)
    print("✓ Polynomial nonlinearity evaluation")


def test_linear_fixed_point():
    """u'' + u = t² has u = t² - 2 + 2cos t, so u(1) = 0.080605."""
    bundle, trace = fixed_point_solve(ModelOperator.diagonal([1.0]), _nonlinearity())
    assert trace.converged
    assert abs(bundle.u.values[-1, 0].real - 0.080605) < 1e-3
    assert bundle.relative_residual <= 1e-3
    print(f"✓ Linear fixed point in {trace.iterations} iterations")


def test_ode_oracle_constant_forcing():
    """u'' + u = 1 from rest is 1 - cos t."""
    grid = TimeGrid(1.0, 64)
    F = _nonlinearity(CoefficientSource.constant(1.0), grid=grid)
    u = ode_oracle(ModelOperator.diagonal([1.0]), F)
    assert np.max(np.abs(u.values[:, 0] - (1.0 - np.cos(grid.nodes)))) < 1e-7
    with pytest.raises(TraceConditionViolation):
        fixed_point_solve(ModelOperator.diagonal([1.0]), F)
    print("✓ RK4 reference")


def test_quadratic_against_oracle():
    A = ModelOperator.diagonal([1.0, 2.0])
    F = _nonlinearity(SQUARE, {2: CoefficientSource.constant(0.1)}, dim=2)
    bundle, trace = fixed_point_solve(A, F)
    assert trace.converged and trace.iterations >= 2
    assert all(r < 1.0 for r in trace.ratios)
    reference = ode_oracle(A, F)
    assert (bundle.u - reference).sup_norm() < 2e-3
    print(f"✓ Quadratic nonlinearity matches RK4 (max ratio {trace.max_ratio():.3e})")


def test_ball_exit_and_iteration_cap():
    A = ModelOperator.diagonal([1.0])
    F = _nonlinearity(SQUARE, {2: CoefficientSource.constant(0.1)})
    with pytest.raises(BallExit) as info:
        fixed_point_solve(A, F, FixedPointConfig(ball_radius=1e-12))
    assert info.value.trace.ball_exit
    with pytest.raises(MaxIterationsExceeded):
        fixed_point_solve(A, F, FixedPointConfig(tolerance=1e-10, max_iterations=2))
    with pytest.raises(ValueError):
        FixedPointConfig(tolerance=1e-12)
    print("✓ Ball exit and iteration cap")


def test_horizon_search():
    A = ModelOperator.diagonal([1.0])
    grid = TimeGrid(1.0, 256)
    F = _nonlinearity(SQUARE, {2: CoefficientSource.constant(0.1)}, grid=grid)
    result = shrinking_horizon_search(A, F)
    assert result.conclusive and result.halvings == 0
    assert result.attempts == [(1.0, "converged")]

    hopeless = shrinking_horizon_search(A, F, FixedPointConfig(ball_radius=1e-12), max_halvings=2)
    assert not hopeless.conclusive
    assert [T for T, _ in hopeless.attempts] == [1.0, 0.5, 0.25]
    assert all(outcome.startswith("BallExit") for _, outcome in hopeless.attempts)
    print("✓ Shrinking horizon search")


def test_blow_up_keeps_trace():
    """Past the blow-up time the iteration fails with its trace attached."""
    A = ModelOperator.diagonal([1.0])
    F = _nonlinearity(SQUARE, BLOW_UP, grid=TimeGrid(1.0, 256))
    with pytest.raises((BallExit, MaxIterationsExceeded)) as info:
        fixed_point_solve(A, F, FixedPointConfig(max_iterations=5))
    trace = info.value.trace
    assert not trace.converged
    summary = trace.to_dict()
    assert summary["converged"] is False and summary["iterations"] == trace.iterations
    if isinstance(info.value, FixedPointDiverged):
        assert trace.contour_refits >= 1 or len(trace.ratios) >= 2
    print(f"✓ {type(info.value).__name__} after {trace.iterations} iterations")


def test_horizon_search_halves_past_blow_up():
    A = ModelOperator.diagonal([1.0])
    F = _nonlinearity(SQUARE, BLOW_UP, grid=TimeGrid(1.0, 256))
    result = shrinking_horizon_search(A, F)
    assert result.conclusive
    assert 1 <= result.halvings <= 6
    T, outcome = result.attempts[0]
    assert T == 1.0 and outcome != "converged"
    assert result.attempts[-1] == (result.horizon, "converged")
    assert result.horizon == 1.0 / 2**result.halvings

    u = result.bundle.u
    assert u.grid.T == result.horizon
    reference = ode_oracle(A, F.on_grid(u.grid))
    assert (u - reference).sup_norm() <= 1e-3 * (1.0 + u.sup_norm())
    print(f"✓ Converged after {result.halvings} halvings at T={result.horizon:g}")


def test_stability_sweep():
    A = ModelOperator.diagonal([1.0])
    grid = TimeGrid(1.0, 256)
    sweep = stability_constant_sweep(A, _nonlinearity(SQUARE, {2: CoefficientSource.constant(0.1)}, grid=grid))
    assert len(sweep.constants) == 4
    assert all(c > 0.0 for c in sweep.constants)
    assert sweep.to_dict()["sweep.ratio"] == sweep.ratio

    zero = CoefficientSource.constant(0.0)
    vacuous = stability_constant_sweep(A, _nonlinearity(zero, {2: CoefficientSource.constant(1.0)}, grid=grid))
    assert all(e.skipped for e in vacuous.entries)
    assert vacuous.ratio is None and vacuous.passed
    print("✓ Stability constant sweep")
