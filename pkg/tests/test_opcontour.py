#!/usr/bin/env python3
"""
Smoke test for opcontour.
Checks imports, configuration tables, factories and argument parsing.
"""

import sys
import os

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))


def test_imports():
    """Test that all imports work correctly."""
    print("Testing imports...")

    from src.config.models import ProblemKind, get_solver_config
    from src.config.defaults import DEFAULT_CONFIG
    from src.config.schema import PROBLEM_SCHEMA
    print("✓ Config imports successful")

    from src.utils.args import parse_arguments
    from src.utils.problem_file import load_problem_file
    print("✓ Utils imports successful")

    from src.services.cauchy import SolverFactory
    from src.services.classes import check_strip
    from src.services.semilinear import fixed_point_solve
    from src.services.verification import CheckFactory
    print("✓ Services imports successful")


def test_solver_configs():
    """Every problem kind except classify has a solver configuration."""
    print("\nTesting solver configurations...")

    from src.config.models import ClassTag, ProblemKind, get_solver_config

    for kind in ProblemKind:
        if kind is ProblemKind.CLASSIFY:
            with pytest.raises(ValueError):
                get_solver_config(kind)
            continue
        config = get_solver_config(kind)
        print(f"  {kind.value}: {config.description}")
        assert config.trace_orders == (1 if kind is ProblemKind.SCHRODINGER else 2)
        assert config.admission_class in (ClassTag.STRIP, ClassTag.PARABOLA)
    print("✓ All solvers configured")


def test_default_config():
    print("\nTesting defaults...")

    from src.config.defaults import DEFAULT_CONFIG

    assert DEFAULT_CONFIG["solver"]["residual_tolerance"] == 1e-3
    assert DEFAULT_CONFIG["fixed_point"]["max_halvings"] == 6
    assert DEFAULT_CONFIG["time"]["min_N"] == 8
    print("✓ Defaults valid")


def test_schema():
    print("\nTesting problem schema...")

    from jsonschema import Draft202012Validator
    from src.config.schema import PROBLEM_SCHEMA

    Draft202012Validator.check_schema(PROBLEM_SCHEMA)
    validator = Draft202012Validator(PROBLEM_SCHEMA)
    good = {"operator": {"kind": "diagonal", "dim": 1, "spectrum": [[1, 2]]}, "problem": {"kind": "wave"}}
    assert validator.is_valid(good)
    assert not validator.is_valid({**good, "contour": {"c": 0, "R": 10, "M": 8}})
    assert not validator.is_valid({**good, "problem": {"kind": "wave", "N": 4}})
    print("✓ Problem schema valid")


def test_argument_parsing():
    """Test argument parsing."""
    print("\nTesting argument parsing...")

    from src.utils.args import parse_arguments, validate_arguments

    args = validate_arguments(parse_arguments(["solve", "problem.json"]))
    assert args.verb == "solve" and args.problem_file == "problem.json"
    assert args.seed is None and not args.allow_trace_warnings
    print("  ✓ Default arguments")

    args = validate_arguments(parse_arguments(["verify", "p.json", "--threads", "4", "--seed", "11"]))
    assert args.threads == 4 and args.seed == 11
    print("  ✓ Runtime arguments")

    assert validate_arguments(parse_arguments(["--list-checks"])).list_checks
    with pytest.raises(SystemExit):
        validate_arguments(parse_arguments(["verify", "p.json", "--threads", "0"]))
    with pytest.raises(SystemExit):
        parse_arguments(["integrate", "p.json"])
    print("✓ Argument parsing works")


def test_interrupt_cleanup():
    """SIGTERM runs the cleanup and exits with the failed status code."""
    print("\nTesting interrupt handling...")

    import signal
    from src.utils.signals import HANDLED_SIGNALS, install_interrupt_cleanup

    previous = {signum: signal.getsignal(signum) for signum in HANDLED_SIGNALS}
    calls = []
    try:
        install_interrupt_cleanup(lambda: calls.append("cleanup"))
        handler = signal.getsignal(signal.SIGTERM)
        assert signal.getsignal(signal.SIGINT) is handler
        with pytest.raises(SystemExit) as info:
            handler(signal.SIGTERM, None)
        assert info.value.code == 2
        assert calls == ["cleanup"]
    finally:
        for signum, old in previous.items():
            if old is not None:
                signal.signal(signum, old)
    print("✓ Interrupts clean up and exit 2")


def main():
    """Run all tests."""
    print("=" * 50)
    print("OPCONTOUR - SMOKE TEST")
    print("=" * 50)

    tests = [
        test_imports,
        test_solver_configs,
        test_default_config,
        test_schema,
        test_argument_parsing,
        test_interrupt_cleanup,
    ]

    passed = 0
    total = len(tests)

    for test in tests:
        try:
            test()
        except Exception as e:
            print(f"✗ {test.__name__} failed: {e}")
            break  # Stop on first failure
        passed += 1

    print(f"\n{'=' * 50}")
    print(f"TESTS COMPLETED: {passed}/{total} PASSED")

    if passed == total:
        print("\nUsage examples:")
        print("  python opcontour.py --list-checks")
        print("  python opcontour.py classify demos/strip_zero.json")
        print("  python opcontour.py solve demos/schrodinger_t.json")
        print("  python opcontour.py verify demos/verify_all.json --seed 7")
    else:
        print("Some tests failed. Please fix issues before using.")
        sys.exit(1)

    print("=" * 50)


if __name__ == "__main__":
    main()
