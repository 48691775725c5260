"""Configuration modules for opcontour."""

from .defaults import DEFAULT_CONFIG
from .models import (
    CheckSpec,
    ClassTag,
    ENormLevel,
    OperatorKind,
    ProblemKind,
    RunStatus,
    Sign,
    SolverConfig,
)
from .schema import PROBLEM_SCHEMA

__all__ = [
    'DEFAULT_CONFIG',
    'CheckSpec',
    'ClassTag',
    'ENormLevel',
    'OperatorKind',
    'ProblemKind',
    'RunStatus',
    'Sign',
    'SolverConfig',
    'PROBLEM_SCHEMA',
]
