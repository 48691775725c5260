"""Enumerations and named configurations for operators, problems and checks."""

from enum import Enum
from dataclasses import dataclass
from typing import Dict, List


class OperatorKind(Enum):
    """Storage variants of a model operator."""
    DENSE = "dense"
    DIAGONAL = "diagonal"


class Sign(Enum):
    """Upper/lower sign of iu' ∓ Au = f and of J± = (B ± iA)^{-1}."""
    PLUS = "+"
    MINUS = "-"

    @property
    def factor(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @property
    def opposite(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS


class ProblemKind(Enum):
    """Kinds of problem files."""
    CLASSIFY = "classify"
    SCHRODINGER = "schrodinger"
    WAVE = "wave"
    SEMILINEAR = "semilinear"


class ClassTag(Enum):
    """Operator classes that can be certified by sampling."""
    SECTORIAL = "sectorial"
    STRIP = "strip"
    STRIP_DECAY = "strip-decay"
    PARABOLA = "parabola"
    R_STRIP = "r-strip"
    R_PARABOLA = "r-parabola"
    BIP = "bip"


class ENormLevel(Enum):
    """Levels of the discrete E-space norm surrogate."""
    E0 = "E0"
    E1 = "E1"
    E2_PARTIAL = "E2-partial"


class RunStatus(Enum):
    """Run outcome, mapped one-to-one onto process exit codes."""
    OK = "ok"
    WARNING = "warning"
    FAILED = "failed"

    @property
    def exit_code(self) -> int:
        return {RunStatus.OK: 0, RunStatus.WARNING: 1, RunStatus.FAILED: 2}[self]

    def worsen(self, other: "RunStatus") -> "RunStatus":
        return self if self.exit_code >= other.exit_code else other


@dataclass
class SolverConfig:
    """Configuration for a Cauchy solver."""
    name: str
    description: str
    residual_order: int
    trace_orders: int
    solution_traces: int
    admission_class: ClassTag


SOLVER_CONFIGS = {
    ProblemKind.SCHRODINGER: SolverConfig(
        name="schrodinger-contour",
        description="iu' ∓ Au = f via u = -i J± f on a vertical line",
        residual_order=1,
        trace_orders=1,
        solution_traces=1,
        admission_class=ClassTag.STRIP,
    ),
    ProblemKind.WAVE: SolverConfig(
        name="wave-contour",
        description="u'' + A²u = f via u = (1/2πi) L f with split-identity cross-check",
        residual_order=2,
        trace_orders=2,
        solution_traces=2,
        admission_class=ClassTag.PARABOLA,
    ),
    ProblemKind.SEMILINEAR: SolverConfig(
        name="semilinear-fixed-point",
        description="u'' + A²u = F(u, t) by Picard iteration around the wave solver",
        residual_order=2,
        trace_orders=2,
        solution_traces=2,
        admission_class=ClassTag.PARABOLA,
    ),
}


def get_solver_config(kind: ProblemKind) -> SolverConfig:
    """Get configuration for a solvable problem kind."""
    if kind not in SOLVER_CONFIGS:
        raise ValueError(f"No solver for problem kind: {kind.value}")
    return SOLVER_CONFIGS[kind]


@dataclass
class CheckSpec:
    """A registered verification check.

    ``threshold`` is the nominal bound. Checks whose bound depends on the grid
    (``per_grid``) report the effective value they compared against.
    """
    name: str
    group: str
    threshold: float
    description: str
    at_least: bool = False
    per_grid: bool = False


_CHECK_LIST: List[CheckSpec] = [
    CheckSpec("resolvent-identity", "linop", 1e-8,
              "resolvent identity on 100 random shift pairs"),
    CheckSpec("diagonal-resolvent", "linop", 1e-12,
              "diagonal resolvent equals 1/(a_j+λ) componentwise"),
    CheckSpec("normal-operator-norm", "linop", 1e-8,
              "spectral norm of normal operators equals max |eigenvalue|"),
    CheckSpec("balakrishnan-oracle", "classes", 1e-6,
              "ray quadrature A^{-θ} against the eigen oracle for diag(1,4)"),
    CheckSpec("balakrishnan-semigroup", "classes", 1e-6,
              "A^{-θ1} A^{-θ2} = A^{-(θ1+θ2)}"),
    CheckSpec("fracpow-decomposition", "classes", 1e-6,
              "resolvent/fractional power decomposition through Q_A on 50 operators"),
    CheckSpec("pv-rate", "classes", 0.2,
              "principal-value projection error slope -1 over R in {1e2,1e3,1e4}"),
    CheckSpec("strip-parabola-equivalence", "classes", 1e-6,
              "strip constant bounds the mapped parabola quantities"),
    CheckSpec("r-bound-hilbert", "classes", 0.02,
              "random Rademacher trials reach within 2% of the sup norm for p=2 and never exceed it"),
    CheckSpec("imaginary-power-group", "classes", 1e-8,
              "A^{it} A^{is} = A^{i(t+s)}"),
    CheckSpec("brnd-bound", "time", 10.0,
              "discrete (B+λ)^{-1} norm below the exponential bound with slack 10/N",
              per_grid=True),
    CheckSpec("b-resolvent-causality", "time", 0.0,
              "late perturbations leave early outputs unchanged"),
    CheckSpec("b-resolvent-identity", "time", 100.0,
              "discrete resolvent identity of B to O(N^-2)", per_grid=True),
    CheckSpec("sobolev-linear", "time", 0.02,
              "seminorm of u(t)=t at s=1/2, p=2 equals 1"),
    CheckSpec("grid-refinement", "time", 0.3,
              "halving the step divides the b-resolvent error by 4"),
    CheckSpec("j-oracle", "cauchy", 1e-3,
              "J+ t at t=1 for A=1 against 1-i-e^{-i}"),
    CheckSpec("schrodinger-oracle", "cauchy", 1e-2,
              "constant forcing, u(1) = e^{-i} - 1"),
    CheckSpec("schrodinger-residual", "cauchy", 1e-3,
              "relative residual of Schrödinger solves on the randomized suite"),
    CheckSpec("wave-oracle", "cauchy", 1e-3,
              "Duhamel values for diag(1) and diag(1,2)"),
    CheckSpec("wave-residual", "cauchy", 1e-3,
              "relative residual of wave solves on the randomized suite"),
    CheckSpec("left-inverse", "cauchy", 1e-3,
              "J±(±iA+B)v = v for manufactured v"),
    CheckSpec("method-agreement", "cauchy", 1e-3,
              "line, double-contour and Fourier evaluations agree on 20 problems"),
    CheckSpec("inverse-composition", "cauchy", 1e-3,
              "wave solution equals J+ J- f"),
    CheckSpec("linearity", "cauchy", 1e-10,
              "solution operators are additive and homogeneous"),
    CheckSpec("zero-traces", "cauchy", 1.0,
              "initial traces of solutions relative to their allowance"),
    CheckSpec("residual-convergence", "cauchy", 2.0,
              "residual drops at least twofold when N doubles with a contour fitted to each grid", at_least=True),
    CheckSpec("semilinear-linear-case", "semilinear", 1e-3,
              "F = t² reproduces u(1) = 0.080605"),
    CheckSpec("semilinear-oracle", "semilinear", 1e-3,
              "fixed point against RK4 on the mild suite"),
    CheckSpec("horizon-halving", "semilinear", 6.0,
              "stress case diverging at T converges after one to six halvings and matches RK4"),
    CheckSpec("stability-sweep", "semilinear", 10.0,
              "max/min of the stability constant over T in {1,1/2,1/4,1/8}"),
    CheckSpec("banach-algebra", "semilinear", 0.0,
              "componentwise product is submultiplicative in the sup norm"),
]

VERIFY_CHECKS: Dict[str, CheckSpec] = {spec.name: spec for spec in _CHECK_LIST}


def get_check_spec(name: str) -> CheckSpec:
    """Get a registered verification check by name."""
    if name not in VERIFY_CHECKS:
        raise KeyError(f"Unknown verification check: {name}")
    return VERIFY_CHECKS[name]


def get_default_checks() -> List[str]:
    """Names of all registered checks in registry order."""
    return [spec.name for spec in _CHECK_LIST]
