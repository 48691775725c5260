"""Contour-integral solution operators and Cauchy solvers."""

from .contour import (
    ContourSpec,
    LineIntegralResult,
    SpaceFactor,
    inner_factor,
    j_factor,
    l_factor,
    line_integral,
    outer_factor,
    pole_gap,
    strip_offset,
)
from .fourier import FourierBranches, fourier_line_apply, fourier_line_branches
from .norms import ENormReport, e_norm, inverse_composition_check, mixed_derivative_check
from .operators import (
    DoubleContourResult,
    LOperatorResult,
    default_outer_contour,
    double_contour_evaluate,
    double_contour_wave_apply,
    j_operator_apply,
    j_operator_evaluate,
    l_operator_apply,
    l_operator_evaluate,
    split_identity_discrepancy,
    split_resolvent_batch,
)
from .problem import CauchyProblem, SolutionBundle, admission_report, trace_violations
from .solvers import (
    BaseCauchySolver,
    SchrodingerSolver,
    SolverFactory,
    WaveSolver,
    schrodinger_residual,
    solve_schrodinger,
    solve_wave,
    wave_residual,
)

__all__ = [
    'BaseCauchySolver',
    'CauchyProblem',
    'ContourSpec',
    'DoubleContourResult',
    'ENormReport',
    'FourierBranches',
    'LOperatorResult',
    'LineIntegralResult',
    'SchrodingerSolver',
    'SolutionBundle',
    'SolverFactory',
    'SpaceFactor',
    'WaveSolver',
    'admission_report',
    'default_outer_contour',
    'double_contour_evaluate',
    'double_contour_wave_apply',
    'e_norm',
    'fourier_line_apply',
    'fourier_line_branches',
    'inner_factor',
    'inverse_composition_check',
    'j_factor',
    'j_operator_apply',
    'j_operator_evaluate',
    'l_factor',
    'l_operator_apply',
    'l_operator_evaluate',
    'line_integral',
    'mixed_derivative_check',
    'outer_factor',
    'pole_gap',
    'schrodinger_residual',
    'solve_schrodinger',
    'solve_wave',
    'split_identity_discrepancy',
    'split_resolvent_batch',
    'strip_offset',
    'trace_violations',
    'wave_residual',
]
