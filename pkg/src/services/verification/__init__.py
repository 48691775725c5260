"""Named invariant checks run by ``opcontour verify``."""

from .base import BaseCheck, CheckOutcome, VerifyContext
from .factory import CheckFactory, run_checks

__all__ = [
    'BaseCheck',
    'CheckFactory',
    'CheckOutcome',
    'VerifyContext',
    'run_checks',
]
