"""Time grids, the derivation operator B and Sobolev–Slobodetskii norms."""

from .derivatives import derivative_values, finite_diff_derivative, initial_traces, trace_tolerance
from .grid import GridFunction, TimeGrid
from .resolvent import (
    BrndReport,
    b_inverse_apply,
    b_resolvent_apply,
    b_resolvent_batch,
    b_resolvent_matrix,
    brnd_bound,
    verify_brnd,
)
from .sobolev import (
    SeminormReport,
    SobolevParams,
    SobolevReport,
    sobolev_norm,
    sobolev_norm_report,
    sobolev_seminorm,
    sobolev_seminorm_report,
)

__all__ = [
    'GridFunction',
    'TimeGrid',
    'BrndReport',
    'SeminormReport',
    'SobolevParams',
    'SobolevReport',
    'b_inverse_apply',
    'b_resolvent_apply',
    'b_resolvent_batch',
    'b_resolvent_matrix',
    'brnd_bound',
    'derivative_values',
    'finite_diff_derivative',
    'initial_traces',
    'sobolev_norm',
    'sobolev_norm_report',
    'sobolev_seminorm',
    'sobolev_seminorm_report',
    'trace_tolerance',
    'verify_brnd',
]
