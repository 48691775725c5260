"""Tests for the verification checks, run reports and thread-count reproducibility."""

import sys
import os

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.config.models import RunStatus, Sign, get_check_spec, get_default_checks
from src.services.cauchy import j_operator_apply
from src.services.errors import SingularResolvent
from src.services.linop import ModelOperator
from src.services.timecalc import GridFunction, TimeGrid
from src.services.verification import BaseCheck, CheckFactory, VerifyContext, run_checks
from src.utils.parallel import configure_threads, get_thread_count
from src.utils.report import RunReport, format_value, render_matrix

CTX = VerifyContext(N=256, seed=0)

CHEAP_CHECKS = [
    "resolvent-identity",
    "diagonal-resolvent",
    "normal-operator-norm",
    "balakrishnan-oracle",
    "imaginary-power-group",
    "b-resolvent-causality",
    "sobolev-linear",
    "j-oracle",
    "linearity",
]


def test_registry_complete():
    names = get_default_checks()
    assert len(names) == len(set(names))
    assert set(CheckFactory.get_available_checks()) == set(names)
    for name in names:
        assert CheckFactory.create_check(name).name == name
    with pytest.raises(KeyError):
        get_check_spec("no-such-check")
    print(f"✓ {len(names)} checks registered")


def test_cheap_checks_pass():
    outcomes = run_checks(CHEAP_CHECKS, CTX)
    failed = [(o.name, o.measured, o.threshold, o.error) for o in outcomes if not o.passed]
    assert not failed, failed
    assert [o.name for o in outcomes] == CHEAP_CHECKS
    print(f"✓ {len(outcomes)} checks passed")


def test_default_suite_passes():
    """Every registered check passes at the default resolution."""
    outcomes = run_checks(get_default_checks(), VerifyContext())
    failed = [(o.name, o.measured, o.threshold, o.error) for o in outcomes if not o.passed]
    assert not failed, failed
    convergence = next(o for o in outcomes if o.name == "residual-convergence")
    assert convergence.measured >= 2.0
    halving = next(o for o in outcomes if o.name == "horizon-halving")
    assert 1.0 <= halving.measured <= 6.0
    print(f"✓ all {len(outcomes)} default checks passed")


def test_check_reproducible():
    first = CheckFactory.create_check("resolvent-identity").run(CTX)
    second = CheckFactory.create_check("resolvent-identity").run(CTX)
    assert first.measured == second.measured
    assert np.array_equal(CTX.rng("a").standard_normal(4), CTX.rng("a").standard_normal(4))
    assert not np.array_equal(CTX.rng("a").standard_normal(4), CTX.rng("b").standard_normal(4))
    print("✓ Checks are seed-reproducible")


class _RaisingCheck(BaseCheck):
    def measure(self, ctx):
        raise SingularResolvent(0.0)


def test_library_error_becomes_failed_row():
    outcome = _RaisingCheck(get_check_spec("diagonal-resolvent")).run(CTX)
    assert not outcome.passed
    assert np.isnan(outcome.measured)
    assert outcome.error.startswith("SingularResolvent")
    assert outcome.to_dict()["error"] == outcome.error
    print("✓ Library errors fail their row")


def test_report_rendering():
    report = RunReport("classify")
    report.add("strip.constant", 2.0)
    report.add("flag", True)
    report.extend("bundle", {"residual": 0.5, "nested": {"k": None}})
    report.warn("something odd")
    assert report.status is RunStatus.WARNING and report.exit_code == 1
    text = report.render()
    assert text.splitlines()[:3] == ["verb=classify", "status=warning", "warning.0=something odd"]
    assert "strip.constant=2\n" in text
    assert "bundle.nested.k=none\n" in text
    report.fail("boom")
    assert report.exit_code == 2
    assert format_value(1 + 2j) == "1+2j"
    assert format_value(0.1) == "0.10000000000000001"

    table = render_matrix([("j-oracle", "1e-4", "1e-3", True), ("linearity", "1", "1e-10", False)])
    assert "✓" in table.splitlines()[1] and "✗" in table.splitlines()[2]
    print("✓ Report rendering")


def test_thread_count_reproducible():
    """Contour sums reduce in a fixed order whatever the worker count."""
    grid = TimeGrid(1.0, 128)
    A = ModelOperator.dense([[1.0, 0.4], [0.0, 2.0]])
    f = GridFunction.from_callable(grid, lambda t: np.stack([t**2, 1j * t**3], axis=1))
    previous = get_thread_count()
    try:
        configure_threads(1)
        serial = j_operator_apply(A, Sign.PLUS, f).values
        configure_threads(4)
        parallel = j_operator_apply(A, Sign.PLUS, f).values
    finally:
        configure_threads(previous)
    assert np.array_equal(serial, parallel)
    print("✓ Identical results for 1 and 4 threads")
