"""Utility modules for opcontour.

``problem_file`` builds service objects and is imported directly, since the
services themselves import ``parallel`` from this package.
"""

from .args import parse_arguments, validate_arguments
from .parallel import configure_threads, get_thread_count, ordered_map
from .report import RunReport, atomic_write_text, render_matrix
from .signals import install_interrupt_cleanup

__all__ = [
    'parse_arguments',
    'validate_arguments',
    'configure_threads',
    'get_thread_count',
    'ordered_map',
    'RunReport',
    'atomic_write_text',
    'render_matrix',
    'install_interrupt_cleanup'
]
