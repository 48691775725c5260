"""Argument parsing utilities."""

import argparse
from argparse import Namespace
from typing import Optional, Sequence

from ..config.defaults import RUNTIME_CONFIG

VERBS = ("classify", "solve", "verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='opcontour',
        description='Contour-integral solvers and operator-class certification for abstract Cauchy problems'
    )

    parser.add_argument(
        'verb',
        nargs='?',
        choices=VERBS,
        help='classify an operator, solve a Cauchy problem or run the verification suite'
    )
    parser.add_argument(
        'problem_file',
        nargs='?',
        help='JSON problem file'
    )

    # Information options
    parser.add_argument(
        '--list-checks',
        action='store_true',
        help='List available verification checks and exit'
    )

    # Runtime options
    runtime_group = parser.add_argument_group('runtime')
    runtime_group.add_argument(
        '--threads',
        type=int,
        default=RUNTIME_CONFIG["threads"],
        help=f'Worker threads for contour sums and sampling (default: {RUNTIME_CONFIG["threads"]})'
    )
    runtime_group.add_argument(
        '--seed',
        type=int,
        default=None,
        help='Random seed; overrides the seed of the problem file'
    )

    # Solver options
    parser.add_argument(
        '--allow-trace-warnings',
        action='store_true',
        help='Accept forcings with non-vanishing initial traces; the run ends with status warning'
    )
    parser.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Enable debug logging'
    )

    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> Namespace:
    """Parse command line arguments."""
    return build_parser().parse_args(argv)


def validate_arguments(args: Namespace) -> Namespace:
    """Check that a verb and a problem file are given unless only listing checks."""
    if args.list_checks:
        return args
    if args.verb is None or args.problem_file is None:
        build_parser().error('a verb and a problem file are required')
    if args.threads < 1:
        build_parser().error(f'--threads must be positive, got {args.threads}')
    return args
