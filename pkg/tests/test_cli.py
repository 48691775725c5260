"""End-to-end tests of the classify, solve and verify verbs on problem files."""

import sys
import os
import json

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.config.models import get_default_checks
from src.opcontour import main
from src.services.timecalc import GridFunction

T_SQUARED = {"tag": "poly-in-t", "coefficients": [0, 0, 1]}


def _write(tmp_path, document, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document) if not isinstance(document, str) else document, encoding="utf-8")
    return str(path)


def _report(tmp_path, name="problem"):
    lines = (tmp_path / f"{name}.report.txt").read_text(encoding="utf-8").splitlines()
    return dict(line.split("=", 1) for line in lines)


def _diagonal(*spectrum):
    return {"kind": "diagonal", "dim": len(spectrum), "spectrum": list(spectrum)}


def test_classify_strip_of_zero(tmp_path):
    path = _write(tmp_path, {
        "operator": _diagonal(0),
        "problem": {"kind": "classify"},
        "classify": {"checks": ["strip"], "c": 1.0},
    })
    assert main(["classify", path]) == 0
    report = _report(tmp_path)
    assert report["status"] == "ok"
    assert report["class.strip.passed"] == "true"
    assert np.isclose(float(report["class.strip.constant"]), 1.0, rtol=1e-9)
    print("✓ classify diag(0) on the strip c = 1")


def test_classify_singular_strip(tmp_path):
    path = _write(tmp_path, {
        "operator": _diagonal([0, 10]),
        "problem": {"kind": "classify"},
        "classify": {"checks": ["strip"], "c": 5.0},
    })
    assert main(["classify", path]) == 2
    report = _report(tmp_path)
    assert report["class.strip.passed"] == "false"
    assert report["class.strip.singular"] == "true"
    print("✓ classify reports a singular strip")


def test_solve_schrodinger(tmp_path, capsys):
    path = _write(tmp_path, {
        "operator": {"kind": "dense", "dim": 2, "entries": [[1, 0.3], [0, -2]]},
        "problem": {"kind": "schrodinger", "sign": "-", "T": 1.0, "N": 512},
        "nonlinearity": {"forcing": {"tag": "poly-in-t", "components": [[0, 0, 1], [0, 0, 0, [0, 1]]]}},
    })
    assert main(["solve", path]) == 0
    assert "=== Solve Summary ===" in capsys.readouterr().out
    report = _report(tmp_path)
    assert report["solution.sign"] == "-"
    assert float(report["solution.relative_residual"]) <= 1e-3
    assert not any(key.endswith("_ms") or key.startswith("stage") for key in report)
    u = GridFunction.from_csv((tmp_path / "problem.solution.csv").read_text(encoding="utf-8"))
    assert u.values.shape == (513, 2)
    assert abs(u.values[0, 0]) < 1e-6
    print("✓ solve writes CSV and report")


def test_wave_trace_violation(tmp_path):
    document = {
        "operator": _diagonal(1, 2),
        "problem": {"kind": "wave", "N": 512},
        "nonlinearity": {"forcing": {"tag": "poly-in-t", "coefficients": [1]}},
    }
    path = _write(tmp_path, document)
    assert main(["solve", path]) == 2
    assert "TraceConditionViolation" in _report(tmp_path)["error"]
    assert not (tmp_path / "problem.solution.csv").exists()

    assert main(["solve", path, "--allow-trace-warnings"]) == 1
    report = _report(tmp_path)
    assert report["status"] == "warning"
    assert "warning.0" in report
    u = GridFunction.from_csv((tmp_path / "problem.solution.csv").read_text(encoding="utf-8"))
    assert np.allclose(u.values[-1].real, [0.459698, 0.354037], atol=1e-3)
    print("✓ trace violations fail unless relaxed")


def test_solve_semilinear(tmp_path):
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "semilinear", "N": 256},
        "nonlinearity": {"forcing": T_SQUARED, "terms": {"2": {"tag": "poly-in-t", "coefficients": [0.1]}}},
        "fixed_point": {"tolerance": 1e-10},
    })
    assert main(["solve", path]) == 0
    report = _report(tmp_path)
    assert report["iteration.converged"] == "true"
    assert float(report["oracle.sup_gap"]) < 2e-3
    print("✓ semilinear solve")


def test_malformed_json(tmp_path, capsys):
    path = _write(tmp_path, '{"operator": ', name="broken.json")
    assert main(["solve", path]) == 2
    assert "invalid problem file" in capsys.readouterr().err
    report = _report(tmp_path, "broken")
    assert report["status"] == "failed"
    assert "malformed JSON" in report["schema.0"]
    print("✓ malformed JSON rejected")


def test_unknown_key(tmp_path):
    path = _write(tmp_path, {"operator": _diagonal(1), "problem": {"kind": "wave"}, "colour": "red"})
    assert main(["solve", path]) == 2
    assert "colour" in _report(tmp_path)["schema.0"]
    print("✓ unknown keys rejected")


def test_terms_only_for_semilinear(tmp_path):
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "wave"},
        "nonlinearity": {"forcing": T_SQUARED, "terms": {"2": {"tag": "poly-in-t", "coefficients": [1]}}},
    })
    assert main(["solve", path]) == 2
    print("✓ nonlinear terms need a semilinear problem")


def test_verify_selected_checks(tmp_path, capsys):
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "classify"},
        "verify": {"checks": ["diagonal-resolvent", "j-oracle"]},
        "seed": 3,
    })
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "=== Verification Matrix ===" in out and "Passed 2/2" in out
    report = _report(tmp_path)
    assert report["verify.seed"] == "3"
    assert report["check.j-oracle.passed"] == "true"
    print("✓ verify runs the selected checks")


def test_verify_empty_selection(tmp_path):
    path = _write(tmp_path, {"operator": _diagonal(1), "problem": {"kind": "classify"}, "verify": {"checks": []}})
    assert main(["verify", path, "--seed", "9"]) == 0
    assert _report(tmp_path)["verify.seed"] == "9"
    print("✓ empty verification passes")


def test_list_checks(capsys):
    assert main(["--list-checks"]) == 0
    out = capsys.readouterr().out
    assert "=== Available Verification Checks ===" in out
    assert "resolvent-identity" in out
    print("✓ --list-checks")


def test_missing_arguments():
    with pytest.raises(SystemExit) as info:
        main(["solve"])
    assert info.value.code == 2
    print("✓ missing problem file is a usage error")


def test_zero_forcing_solve(tmp_path):
    path = _write(tmp_path, {"operator": _diagonal(1, 2), "problem": {"kind": "wave", "N": 64}})
    assert main(["solve", path]) == 0
    u = GridFunction.from_csv((tmp_path / "problem.solution.csv").read_text(encoding="utf-8"))
    assert not np.any(u.values)
    print("✓ zero forcing gives a zero CSV")


def test_semilinear_ball_exit(tmp_path):
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "semilinear", "N": 128},
        "nonlinearity": {"forcing": T_SQUARED, "terms": {"2": {"tag": "poly-in-t", "coefficients": [0.1]}}},
        "fixed_point": {"ball_radius": 1e-12},
    })
    assert main(["solve", path]) == 2
    report = _report(tmp_path)
    assert report["iteration.ball_exit"] == "true"
    assert "iteration.iter_1_update" in report
    assert not (tmp_path / "problem.solution.csv").exists()
    print("✓ iterate leaving the ball fails with its trace")


def test_verify_deterministic_across_threads(tmp_path):
    """The whole default suite renders the same bytes for 1 and 8 workers."""
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "classify", "N": 256},
        "seed": 5,
    })
    main(["verify", path, "--threads", "1"])
    first = (tmp_path / "problem.report.txt").read_bytes()
    report = _report(tmp_path)
    assert all(f"check.{name}.passed" in report for name in get_default_checks())
    main(["verify", path, "--threads", "8"])
    assert (tmp_path / "problem.report.txt").read_bytes() == first
    print("✓ full verify report is byte-identical for 1 and 8 threads")


def test_semilinear_blow_up(tmp_path):
    """F = t² + 1.5·10⁴u² blows up before T = 1; the run fails with its iteration trace."""
    path = _write(tmp_path, {
        "operator": _diagonal(1),
        "problem": {"kind": "semilinear", "N": 256},
        "nonlinearity": {"forcing": T_SQUARED, "terms": {"2": {"tag": "poly-in-t", "coefficients": [1.5e4]}}},
        "fixed_point": {"max_iterations": 5},
    })
    assert main(["solve", path]) == 2
    report = _report(tmp_path)
    assert report["status"] == "failed"
    assert report["iteration.converged"] == "false"
    assert "iteration.iterations" in report and "iteration.contour_refits" in report
    assert report["error"].split(":")[0] in ("BallExit", "FixedPointDiverged", "MaxIterationsExceeded")
    assert not (tmp_path / "problem.solution.csv").exists()
    print("✓ semilinear blow-up fails with its trace")
