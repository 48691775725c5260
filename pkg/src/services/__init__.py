"""Service modules for opcontour."""

from .cauchy import SolverFactory
from .verification import CheckFactory

__all__ = [
    'SolverFactory',
    'CheckFactory'
]
