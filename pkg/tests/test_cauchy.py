"""Tests for contour operators and the Schrödinger and wave solvers."""

import sys
import os
from types import SimpleNamespace

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.config.models import ENormLevel, ProblemKind, Sign
from src.services.cauchy import (
    CauchyProblem,
    ContourSpec,
    SolverFactory,
    double_contour_wave_apply,
    e_norm,
    mixed_derivative_check,
    fourier_line_apply,
    inverse_composition_check,
    j_operator_apply,
    l_operator_apply,
    solve_schrodinger,
    solve_wave,
    strip_offset,
)
from src.services.errors import AdmissionError, GammaTooSmall, TraceConditionViolation
from src.services.linop import ModelOperator
from src.services.timecalc import GridFunction, TimeGrid

GRID = TimeGrid(1.0, 512)


def _forcing(func, dim=1, grid=GRID):
    return GridFunction.from_callable(grid, func, dim)


def _relative(a, b):
    return (a - b).lp_norm() / max(a.lp_norm(), b.lp_norm())


def test_contour_auto():
    A = ModelOperator.diagonal([1.0, 2j])
    assert np.isclose(strip_offset(A), 3.5)
    spec = ContourSpec.auto(A, GRID)
    assert spec.c == 3.5
    assert spec.M % 4 == 0
    assert spec.R >= 10.0 * max(spec.c, 2.0)
    assert spec.frozen().adaptive is False
    with pytest.raises(ValueError):
        ContourSpec(0.0, 10.0, 8)
    print("✓ Contour derived from the spectrum")


def test_j_oracle():
    """J₊t at t = 1 for A = 1 is 1 - i - e^{-i}."""
    g = _forcing(lambda t: t)
    value = complex(j_operator_apply(ModelOperator.diagonal([1.0]), Sign.PLUS, g).values[-1, 0])
    assert abs(value - (0.459698 - 0.158529j)) < 1e-3
    print(f"✓ J₊t(1) = {value:.6f}")


def test_left_inverse():
    """J±(±iA + B)v = v."""
    A = ModelOperator.dense([[1.0, 0.5], [0.0, 2.0]])
    t = GRID.nodes[:, None]
    a = np.array([1.0 + 1j, -0.5])
    v = GridFunction(GRID, a * t**2)
    for sign in Sign:
        w = v.with_values(sign.factor * 1j * A.apply(v.values) + 2.0 * a * t)
        assert _relative(j_operator_apply(A, sign, w), v) < 1e-3
    print("✓ J± inverts ±iA + B")


def test_schrodinger_oracle():
    """iu' - u = 1 has u(1) = e^{-i} - 1; the forcing violates u(0) = 0 and needs relaxing."""
    A = ModelOperator.diagonal([1.0])
    f = _forcing(lambda t: np.ones_like(t))
    with pytest.raises(TraceConditionViolation):
        CauchyProblem(A, Sign.PLUS, f, ProblemKind.SCHRODINGER)
    problem = CauchyProblem(A, Sign.PLUS, f, ProblemKind.SCHRODINGER, relax_traces=True)
    assert problem.warnings
    bundle = solve_schrodinger(problem)
    assert abs(complex(bundle.u.values[-1, 0]) - (-0.459698 - 0.841471j)) < 1e-2
    assert bundle.warnings
    print("✓ Schrödinger oracle")


def test_schrodinger_residual():
    A = ModelOperator.dense([[1.0, 0.3], [0.0, -2.0]])
    f = _forcing(lambda t: np.stack([t**2, 1j * t**3], axis=1))
    for sign in Sign:
        bundle = solve_schrodinger(CauchyProblem(A, sign, f, ProblemKind.SCHRODINGER))
        assert bundle.relative_residual <= 1e-3
        assert bundle.trace_norms[0] < 1e-6
        assert bundle.sign_correction == 1.0
        assert not bundle.warnings
    print("✓ Schrödinger residuals")


def test_wave_oracle():
    """u'' + A²u = 1 gives u(1) = (1 - cos a)/a² componentwise."""
    A = ModelOperator.diagonal([1.0, 2.0])
    f = _forcing(lambda t: np.ones_like(t), dim=2)
    with pytest.raises(TraceConditionViolation):
        CauchyProblem(A, Sign.PLUS, f, ProblemKind.WAVE)
    bundle = solve_wave(CauchyProblem(A, Sign.PLUS, f, ProblemKind.WAVE, relax_traces=True))
    assert np.allclose(bundle.u.values[-1].real, [0.459698, 0.354037], atol=1e-3)
    print("✓ Wave oracle")


def test_wave_residual_and_traces():
    A = ModelOperator.diagonal([1.0, 3.0])
    f = _forcing(lambda t: t**2 + t**3, dim=2)
    bundle = solve_wave(CauchyProblem(A, Sign.PLUS, f, ProblemKind.WAVE))
    assert bundle.relative_residual <= 1e-3
    assert bundle.split_discrepancy is not None and bundle.split_discrepancy <= 1e-6
    assert len(bundle.trace_norms) == 2
    t = GRID.nodes
    exact = t**2 + t**3 - 2.0 - 6.0 * t + 2.0 * np.cos(t) + 6.0 * np.sin(t)
    assert np.max(np.abs(bundle.u.values[:, 0] - exact)) < 1e-3
    print("✓ Wave residual and traces")


def test_zero_forcing():
    A = ModelOperator.diagonal([1.0, 2.0])
    f = GridFunction.zeros(GRID, 2)
    for kind, solve in ((ProblemKind.SCHRODINGER, solve_schrodinger), (ProblemKind.WAVE, solve_wave)):
        bundle = solve(CauchyProblem(A, Sign.PLUS, f, kind))
        assert not np.any(bundle.u.values)
        assert bundle.residual == 0.0 and bundle.relative_residual == 0.0
    print("✓ Zero forcing gives the zero solution")


def test_admission_failure():
    """A contour offset inside the spectral strip fails the strip check."""
    A = ModelOperator.diagonal([10j])
    f = _forcing(lambda t: t**2)
    with pytest.raises(AdmissionError) as info:
        CauchyProblem(A, Sign.PLUS, f, ProblemKind.SCHRODINGER, ContourSpec(5.0, 100.0, 400))
    assert info.value.report.singular
    print("✓ Admission failure")


def test_method_agreement():
    """Line, Fourier-line and double-contour evaluations agree."""
    grid = TimeGrid(1.0, 256)
    A = ModelOperator.diagonal([1.0, -2.0])
    f = _forcing(lambda t: t**2 - 0.5j * t**3, dim=2, grid=grid)
    line = j_operator_apply(A, Sign.MINUS, f)
    assert _relative(line, fourier_line_apply(A, Sign.MINUS, f)) < 1e-3
    wave = f.with_values(l_operator_apply(A, f).values / (2j * np.pi))
    assert _relative(wave, double_contour_wave_apply(A, f)) < 1e-3
    assert inverse_composition_check(A, f) < 1e-3
    with pytest.raises(GammaTooSmall):
        fourier_line_apply(ModelOperator.diagonal([3j]), Sign.PLUS, f.with_values(f.values[:, :1]), gamma=2.0)
    print("✓ Evaluation methods agree")


def test_linearity():
    A = ModelOperator.dense([[1.0, 0.2], [0.1, 2.0]])
    spec = ContourSpec.auto(A, GRID).frozen()
    f = _forcing(lambda t: np.stack([t**2, t**3], axis=1))
    g = _forcing(lambda t: np.stack([1j * t**3, t**2], axis=1))
    lhs = j_operator_apply(A, Sign.PLUS, f + 2.0 * g, spec)
    rhs = j_operator_apply(A, Sign.PLUS, f, spec) + 2.0 * j_operator_apply(A, Sign.PLUS, g, spec)
    assert (lhs - rhs).sup_norm() <= 1e-10 * max(1.0, lhs.sup_norm())
    print("✓ Solution operators are linear")


def test_e_norm_levels():
    A = ModelOperator.diagonal([1.0])
    zero = GridFunction.zeros(GRID, 1)
    for level in ENormLevel:
        assert e_norm(A, Sign.PLUS, zero, level).total == 0.0
    u = _forcing(lambda t: t**2)
    e0 = e_norm(A, Sign.PLUS, u, ENormLevel.E0)
    e1 = e_norm(A, Sign.PLUS, u, ENormLevel.E1)
    assert e0.total > 0.0 and e1.total > 0.0
    assert e0.higher_order == 0.0
    print("✓ E-norm levels")


def test_solver_factory():
    assert set(SolverFactory.get_available_solvers()) == {"schrodinger", "wave", "semilinear"}
    assert SolverFactory.create_solver(ProblemKind.WAVE).name == "wave-contour"
    with pytest.raises(ValueError):
        SolverFactory.create_solver(ProblemKind.SEMILINEAR)
    print("✓ Solver factory")


def test_mixed_derivative_check():
    A = ModelOperator.diagonal([2.0])
    assert mixed_derivative_check(A, GridFunction.zeros(GRID, 1)) == 0.0
    u = _forcing(lambda t: t**2)
    # ||4t|| / (||t^2|| + ||2|| + ||4t^2||) in L^2(0, 1)
    expected = (4.0 / np.sqrt(3.0)) / (1.0 / np.sqrt(5.0) + 2.0 + 4.0 / np.sqrt(5.0))
    assert np.isclose(mixed_derivative_check(A, u), expected, rtol=1e-3)
    print("✓ Mixed derivative ratio")


def test_inverse_composition_goes_through_wave_solver(monkeypatch):
    """A sign slip in solve_wave shows up in the composition check."""
    import src.services.cauchy.norms as norms

    A = ModelOperator.diagonal([1.0, -2.0])
    f = _forcing(lambda t: t**2 - 0.5j * t**3, dim=2, grid=TimeGrid(1.0, 256))
    assert inverse_composition_check(A, f) < 1e-3

    solve = norms.solve_wave
    kinds = []

    def flipped(problem):
        kinds.append(problem.kind)
        return SimpleNamespace(u=solve(problem).u * -1.0)

    monkeypatch.setattr(norms, "solve_wave", flipped)
    assert inverse_composition_check(A, f) > 1.0
    assert kinds == [ProblemKind.WAVE]
    print("✓ Composition check follows the wave solver")
