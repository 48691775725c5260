"""Problem-file loading: JSON parsing, schema validation and object building."""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
from jsonschema import Draft202012Validator

from ..config.defaults import REGION_CONFIG, RUNTIME_CONFIG, SOLVER_CONFIG, TIME_CONFIG
from ..config.models import ClassTag, ProblemKind, Sign, get_default_checks
from ..config.schema import PROBLEM_SCHEMA
from ..services.cauchy import ContourSpec
from ..services.classes import RademacherTrialSpec
from ..services.errors import DimensionMismatch, SchemaError
from ..services.linop import ModelOperator
from ..services.semilinear import CoefficientSource, FixedPointConfig, PolynomialNonlinearity
from ..services.timecalc import GridFunction, TimeGrid

logger = logging.getLogger(__name__)

_VALIDATOR = Draft202012Validator(PROBLEM_SCHEMA)


@dataclass
class ClassifyOptions:
    """Which classes to certify and with which parameters.

    Attributes:
        checks: Class tags in file order; all tags when the file names none.
        phi: Sector half-angle.
        c: Strip/parabola offset; derived from the spectrum when omitted.
        K_max: Ceiling for class constants.
        delta: Half-width of the imaginary-power sample interval.
        parabola_operator: "square" certifies Λ = A² with root A, "self"
            certifies Λ = A with its principal square root.
        r_bound: Rademacher sampling parameters.
    """
    checks: List[ClassTag] = field(default_factory=lambda: list(ClassTag))
    phi: float = math.pi / 2
    c: Optional[float] = None
    K_max: float = SOLVER_CONFIG["k_max"]
    delta: float = REGION_CONFIG["bip_delta"]
    parabola_operator: str = "square"
    r_bound: RademacherTrialSpec = field(default_factory=RademacherTrialSpec)


@dataclass
class ProblemFile:
    """A validated problem file with its objects built."""
    path: str
    data: Dict[str, Any]
    operator: ModelOperator
    kind: ProblemKind
    sign: Sign
    grid: TimeGrid
    p: float
    contour: Optional[ContourSpec]
    nonlinearity: PolynomialNonlinearity
    seed: int
    csv_path: str
    report_path: str
    classify: ClassifyOptions
    fixed_point: FixedPointConfig
    horizons: List[float] = field(default_factory=list)
    search: bool = False
    verify_checks: List[str] = field(default_factory=get_default_checks)

    @property
    def forcing(self) -> GridFunction:
        return self.nonlinearity.forcing


def parse_complex(value: Any) -> complex:
    """A JSON number or a [re, im] pair."""
    if isinstance(value, list):
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def default_output_paths(path: str) -> tuple[str, str]:
    """<stem>.solution.csv and <stem>.report.txt next to the problem file."""
    stem, _ = os.path.splitext(os.path.abspath(path))
    return f"{stem}.solution.csv", f"{stem}.report.txt"


def validate_document(data: Any) -> None:
    """Raise SchemaError listing every schema violation."""
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        raise SchemaError([f"{'/'.join(str(p) for p in e.absolute_path) or '<root>'}: {e.message}" for e in errors])


def build_operator(spec: Dict[str, Any]) -> ModelOperator:
    dim = spec["dim"]
    try:
        if spec["kind"] == "diagonal":
            spectrum = [parse_complex(v) for v in spec["spectrum"]]
            if len(spectrum) != dim:
                raise DimensionMismatch(f"spectrum has {len(spectrum)} values, dim is {dim}")
            return ModelOperator.diagonal(spectrum)
        rows = [[parse_complex(v) for v in row] for row in spec["entries"]]
        if len(rows) != dim or any(len(row) != dim for row in rows):
            raise DimensionMismatch(f"entries must be {dim}x{dim}")
        return ModelOperator.dense(np.array(rows))
    except DimensionMismatch as e:
        raise SchemaError([f"operator: {e}"]) from e


def build_coefficient(spec: Dict[str, Any], where: str) -> CoefficientSource:
    """A table, one broadcast polynomial, or one polynomial per component (zero-padded)."""
    try:
        if "table" in spec:
            rows = [[parse_complex(v) for v in row] for row in spec["table"]]
            if len({len(row) for row in rows}) != 1:
                raise ValueError("table rows differ in length")
            return CoefficientSource(table=np.array(rows))
        if "components" in spec:
            rows = [[parse_complex(v) for v in row] for row in spec["components"]]
            poly = np.zeros((len(rows), max(len(row) for row in rows)), dtype=complex)
            for j, row in enumerate(rows):
                poly[j, : len(row)] = row
            return CoefficientSource(poly=poly)
        return CoefficientSource(poly=np.array([[parse_complex(v) for v in spec["coefficients"]]]))
    except ValueError as e:
        raise SchemaError([f"{where}: {e}"]) from e


def build_nonlinearity(spec: Optional[Dict[str, Any]], grid: TimeGrid, dim: int, kind: ProblemKind) -> PolynomialNonlinearity:
    spec = spec or {}
    forcing = build_coefficient(spec["forcing"], "nonlinearity/forcing") if "forcing" in spec else CoefficientSource.constant(0.0)
    terms = {int(k): build_coefficient(v, f"nonlinearity/terms/{k}") for k, v in spec.get("terms", {}).items()}
    if terms and kind is not ProblemKind.SEMILINEAR:
        raise SchemaError([f"nonlinearity/terms: only semilinear problems take terms, got {kind.value}"])
    try:
        return PolynomialNonlinearity.from_sources(grid, dim, forcing, terms)
    except (DimensionMismatch, ValueError) as e:
        raise SchemaError([f"nonlinearity: {e}"]) from e


def build_contour(spec: Any) -> Optional[ContourSpec]:
    """None for "auto" or absent; an explicit contour is the starting point of the doubling."""
    if spec is None or spec == "auto":
        return None
    try:
        return ContourSpec(float(spec["c"]), float(spec["R"]), int(spec["M"]))
    except ValueError as e:
        raise SchemaError([f"contour: {e}"]) from e


def build_classify(spec: Optional[Dict[str, Any]]) -> ClassifyOptions:
    spec = spec or {}
    options = ClassifyOptions()
    if "checks" in spec:
        options.checks = [ClassTag(tag) for tag in spec["checks"]]
    for key in ("phi", "c", "K_max", "delta", "parabola_operator"):
        if key in spec:
            setattr(options, key, spec[key])
    if "r_bound" in spec:
        options.r_bound = RademacherTrialSpec(**spec["r_bound"])
    return options


def load_problem_file(path: str, seed: Optional[int] = None) -> ProblemFile:
    """Read, validate and build a problem file.

    Raises:
        SchemaError: unreadable file, malformed JSON, schema violations or
            inconsistent sizes.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise SchemaError([f"cannot read {path}: {e.strerror}"]) from e
    except json.JSONDecodeError as e:
        raise SchemaError([f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}"]) from e
    validate_document(data)

    operator = build_operator(data["operator"])
    problem = data["problem"]
    kind = ProblemKind(problem["kind"])
    grid = TimeGrid(problem.get("T", TIME_CONFIG["default_T"]), problem.get("N", TIME_CONFIG["default_N"]))
    csv_path, report_path = default_output_paths(path)
    output = data.get("output", {})
    base = os.path.dirname(os.path.abspath(path))
    fixed_point = data.get("fixed_point", {})
    config_keys = ("tolerance", "max_iterations", "ball_radius", "window")
    try:
        config = FixedPointConfig(**{k: fixed_point[k] for k in config_keys if k in fixed_point})
    except ValueError as e:
        raise SchemaError([f"fixed_point: {e}"]) from e
    horizons = [float(T) for T in fixed_point.get("horizons", [])]
    if any(T > grid.T for T in horizons):
        raise SchemaError([f"fixed_point/horizons: horizons must not exceed T={grid.T}"])

    loaded = ProblemFile(
        path=path,
        data=data,
        operator=operator,
        kind=kind,
        sign=Sign(problem.get("sign", Sign.PLUS.value)),
        grid=grid,
        p=float(problem.get("p", TIME_CONFIG["default_p"])),
        contour=build_contour(data.get("contour")),
        nonlinearity=build_nonlinearity(data.get("nonlinearity"), grid, operator.dim, kind),
        seed=seed if seed is not None else int(data.get("seed", RUNTIME_CONFIG["seed"])),
        csv_path=os.path.join(base, output["csv"]) if "csv" in output else csv_path,
        report_path=os.path.join(base, output["report"]) if "report" in output else report_path,
        classify=build_classify(data.get("classify")),
        fixed_point=config,
        horizons=horizons,
        search=bool(fixed_point.get("search", False)),
        verify_checks=list(data["verify"]["checks"]) if "checks" in data.get("verify", {}) else get_default_checks(),
    )
    logger.debug("loaded %s: %s problem, dim %d, %s", path, kind.value, operator.dim, grid)
    return loaded
