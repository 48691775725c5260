"""Semilinear wave equation u'' + A²u = F(u, t) by fixed-point iteration."""

from .fixed_point import (
    FixedPointConfig,
    HorizonSearchResult,
    IterationTrace,
    fixed_point_solve,
    shrinking_horizon_search,
)
from .nonlinearity import CoefficientSource, PolynomialNonlinearity, evaluate_F, resample
from .oracle import ode_oracle
from .stability import DEFAULT_HORIZONS, StabilityEntry, StabilitySweep, stability_constant_sweep

__all__ = [
    'CoefficientSource',
    'DEFAULT_HORIZONS',
    'FixedPointConfig',
    'HorizonSearchResult',
    'IterationTrace',
    'PolynomialNonlinearity',
    'StabilityEntry',
    'StabilitySweep',
    'evaluate_F',
    'fixed_point_solve',
    'ode_oracle',
    'resample',
    'shrinking_horizon_search',
    'stability_constant_sweep',
]
