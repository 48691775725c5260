"""Operator-class certification, R-bounds and fractional powers."""

from .checks import (
    EquivalenceReport,
    check_bip,
    check_parabola,
    check_r_parabola,
    check_r_strip,
    check_sectorial,
    check_strip,
    check_strip_decay,
    split_resolvent_apply,
    strip_parabola_equivalence,
)
from .fractional import (
    PowerResult,
    RayQuadrature,
    balakrishnan_power,
    balakrishnan_power_report,
    ensure_sectorial_spectrum,
    fractional_power,
    imaginary_power_oracle,
    principal_sqrt,
    pv_projection,
    q_operator,
)
from .rbound import RademacherTrialSpec, RBoundEstimate, estimate_r_bound
from .regions import ClassificationReport, ParabolaRegion, SectorRegion, StripRegion

__all__ = [
    'ClassificationReport',
    'EquivalenceReport',
    'ParabolaRegion',
    'PowerResult',
    'RBoundEstimate',
    'RademacherTrialSpec',
    'RayQuadrature',
    'SectorRegion',
    'StripRegion',
    'balakrishnan_power',
    'balakrishnan_power_report',
    'check_bip',
    'check_parabola',
    'check_r_parabola',
    'check_r_strip',
    'check_sectorial',
    'check_strip',
    'check_strip_decay',
    'ensure_sectorial_spectrum',
    'estimate_r_bound',
    'fractional_power',
    'imaginary_power_oracle',
    'principal_sqrt',
    'pv_projection',
    'q_operator',
    'split_resolvent_apply',
    'strip_parabola_equivalence',
]
