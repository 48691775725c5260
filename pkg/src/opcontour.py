"""
opcontour

Orchestrator for the classify, solve and verify verbs. Each run reads one
problem file, prints a summary with stage timings to stdout and writes a
key=value report (and for solves a solution CSV) atomically next to it.
"""

# Load .env BEFORE any imports that read environment variables
from pathlib import Path
try:
    from dotenv import load_dotenv
    env_path = Path(__file__).parent.parent / '.env'
    if env_path.exists():
        load_dotenv(env_path)
except ImportError:
    pass  # dotenv not available, skip

import dataclasses
import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional, Sequence

from .config.models import ClassTag, ENormLevel, ProblemKind
from .services.cauchy import CauchyProblem, SolutionBundle, e_norm, solve_schrodinger, solve_wave, strip_offset
from .services.classes import (
    ClassificationReport,
    ParabolaRegion,
    SectorRegion,
    StripRegion,
    check_bip,
    check_parabola,
    check_r_parabola,
    check_r_strip,
    check_sectorial,
    check_strip,
    check_strip_decay,
    principal_sqrt,
    strip_parabola_equivalence,
)
from .services.errors import (
    BallExit,
    MaxIterationsExceeded,
    OpcontourError,
    ResidualTooLarge,
    SchemaError,
)
from .services.linop import ModelOperator, operator_norm
from .services.semilinear import (
    fixed_point_solve,
    ode_oracle,
    shrinking_horizon_search,
    stability_constant_sweep,
)
from .services.verification import CheckFactory, VerifyContext
from .utils.args import parse_arguments, validate_arguments
from .utils.logging import enable_verbose_logging, setup_logging
from .utils.parallel import configure_threads
from .utils.problem_file import ClassifyOptions, ProblemFile, default_output_paths, load_problem_file
from .utils.report import RunReport, atomic_write_text, format_value, remove_pending_files, render_matrix
from .utils.signals import install_interrupt_cleanup

logger = logging.getLogger(__name__)


class OpcontourOrchestrator:
    """Runs one verb on one problem file."""

    def __init__(self, allow_trace_warnings: bool = False, seed: Optional[int] = None):
        self.allow_trace_warnings = allow_trace_warnings
        self.seed = seed
        self.report: Optional[RunReport] = None

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.report.stages[name] = (time.perf_counter() - start) * 1000.0

    # ------------------------------------------------------------------ classify

    def classify_tag(self, A: ModelOperator, tag: ClassTag, options: ClassifyOptions, c: float, seed: int) -> ClassificationReport:
        """Certify one class with the options of the problem file."""
        scale = max(operator_norm(A), 1.0)
        trial_spec = dataclasses.replace(options.r_bound, seed=seed)
        if tag is ClassTag.SECTORIAL:
            return check_sectorial(A, SectorRegion.default(options.phi, scale), options.K_max)
        if tag is ClassTag.BIP:
            return check_bip(A, options.delta, K_max=options.K_max)
        if tag in (ClassTag.STRIP, ClassTag.STRIP_DECAY, ClassTag.R_STRIP):
            region = StripRegion.default(c, scale, A.eigenvalues())
            if tag is ClassTag.STRIP:
                return check_strip(A, region, options.K_max)
            if tag is ClassTag.STRIP_DECAY:
                return check_strip_decay(A, region)
            return check_r_strip(A, region, options.K_max, trial_spec)
        if options.parabola_operator == "self":
            Lam, root = A, principal_sqrt(A)
        else:
            Lam, root = A.square(), A
        region = ParabolaRegion.default(c, max(operator_norm(Lam), 1.0))
        if tag is ClassTag.PARABOLA:
            return check_parabola(Lam, region, options.K_max, root)
        return check_r_parabola(Lam, region, options.K_max, root, trial_spec)

    def run_classify(self, problem: ProblemFile) -> None:
        options = problem.classify
        A = problem.operator
        c = options.c if options.c is not None else strip_offset(A)
        self.report.add("operator.dim", A.dim)
        self.report.add("classify.c", c)
        print("\n=== Classification Results ===")
        for tag in options.checks:
            with self.stage(tag.value):
                try:
                    result = self.classify_tag(A, tag, options, c, problem.seed)
                except OpcontourError as e:
                    logger.warning("%s check failed: %s", tag.value, e)
                    self.report.add(f"class.{tag.value}.passed", False)
                    self.report.add(f"class.{tag.value}.error", f"{type(e).__name__}: {e}")
                    self.report.fail()
                    print(f"  {tag.value:<12} error: {e}")
                    continue
            self.report.extend(f"class.{tag.value}", result.to_dict())
            if not result.passed:
                self.report.fail()
            mark = "✓" if result.passed else "✗"
            print(f"  {tag.value:<12} K̂={format_value(result.constant):<24} at {format_value(result.worst_point)}  {mark}"
                  f"  ({self.report.stages[tag.value]:.1f} ms)")
        if ClassTag.STRIP in options.checks and ClassTag.PARABOLA in options.checks and options.parabola_operator == "square":
            with self.stage("equivalence"):
                equivalence = strip_parabola_equivalence(A, c, seed=problem.seed)
            self.report.extend("equivalence", dataclasses.asdict(equivalence))
            if not equivalence.passed:
                self.report.warn(f"strip/parabola transfer excess {equivalence.pointwise_excess:.3e}")
            print(f"  strip->parabola transfer: excess {equivalence.pointwise_excess:.3e}"
                  f"  ({self.report.stages['equivalence']:.1f} ms)")
        print("=" * 30)

    # ------------------------------------------------------------------ solve

    def _record_bundle(self, problem: ProblemFile, bundle: SolutionBundle) -> None:
        self.report.extend("solution", bundle.to_dict())
        norm = e_norm(problem.operator, problem.sign, bundle.u, ENormLevel.E0, problem.p)
        self.report.extend("enorm", dataclasses.asdict(norm) | {"total": norm.total})
        for message in bundle.warnings:
            self.report.warn(message)

    def _solve_linear(self, problem: ProblemFile) -> SolutionBundle:
        with self.stage("admission"):
            cauchy = CauchyProblem(
                problem.operator, problem.sign, problem.forcing, problem.kind, problem.contour,
                relax_traces=self.allow_trace_warnings, p=problem.p,
            )
        if cauchy.admission is not None:
            self.report.extend("admission", cauchy.admission.to_dict())
        with self.stage("solve"):
            solve = solve_schrodinger if problem.kind is ProblemKind.SCHRODINGER else solve_wave
            return solve(cauchy)

    def _solve_semilinear(self, problem: ProblemFile) -> Optional[SolutionBundle]:
        A, F = problem.operator, problem.nonlinearity
        self.report.add("fixed_point.tolerance", problem.fixed_point.tolerance)
        with self.stage("solve"):
            if problem.search:
                search = shrinking_horizon_search(
                    A, F, problem.fixed_point, relax_traces=self.allow_trace_warnings, p=problem.p
                )
                self.report.extend("search", search.to_dict())
                if not search.conclusive:
                    self.report.fail("no horizon converged")
                    return None
                bundle, trace = search.bundle, search.trace
                if search.halvings:
                    self.report.warn(f"converged only on the shortened horizon T={search.horizon:.6g}")
            else:
                bundle, trace = fixed_point_solve(
                    A, F, problem.fixed_point, problem.contour, self.allow_trace_warnings, problem.p
                )
        self.report.extend("iteration", trace.to_dict())
        with self.stage("oracle"):
            try:
                reference = ode_oracle(A, F.on_grid(bundle.u.grid))
                self.report.add("oracle.sup_gap", (bundle.u - reference).sup_norm())
            except OpcontourError as e:
                self.report.add("oracle.error", f"{type(e).__name__}: {e}")
        if problem.horizons:
            with self.stage("stability"):
                sweep = stability_constant_sweep(
                    A, F, problem.horizons, problem.contour, problem.fixed_point,
                    self.allow_trace_warnings, problem.p,
                )
            self.report.extend("stability", sweep.to_dict())
            if not sweep.passed:
                self.report.warn("stability constants disagree across horizons")
        return bundle

    def run_solve(self, problem: ProblemFile) -> None:
        if problem.kind is ProblemKind.CLASSIFY:
            raise SchemaError(["problem/kind: classify problems cannot be solved"])
        self.report.add("problem.kind", problem.kind)
        self.report.add("problem.sign", problem.sign)
        bundle: Optional[SolutionBundle] = None
        try:
            if problem.kind is ProblemKind.SEMILINEAR:
                bundle = self._solve_semilinear(problem)
            else:
                bundle = self._solve_linear(problem)
        except ResidualTooLarge as e:
            bundle = e.bundle
            self.report.fail(str(e))
        except (MaxIterationsExceeded, BallExit) as e:
            self.report.extend("iteration", e.trace.to_dict())
            self.report.fail(f"{type(e).__name__}: {e}")

        if bundle is not None:
            self._record_bundle(problem, bundle)
            with self.stage("write"):
                atomic_write_text(problem.csv_path, bundle.u.to_csv())
            self.report.add("output.csv", problem.csv_path)

        print("\n=== Solve Summary ===")
        print(f"Problem: {problem.kind.value} (sign {problem.sign.value}), dim {problem.operator.dim}, "
              f"T={problem.grid.T:g}, N={problem.grid.N}")
        if bundle is not None:
            print(f"Method: {bundle.method}")
            print(f"Relative residual: {bundle.relative_residual:.3e}")
            print(f"Contour: c={bundle.contour.c:.6g} R={bundle.contour.R:.6g} M={bundle.contour.M}")
            print(f"Solution CSV: {problem.csv_path}")
        for message in self.report.warnings:
            print(f"Warning: {message}")
        for name, ms in self.report.stages.items():
            print(f"  {name}: {ms:.1f} ms")
        print("=" * 21)

    # ------------------------------------------------------------------ verify

    def run_verify(self, problem: ProblemFile) -> None:
        ctx = VerifyContext(N=problem.grid.N, T=problem.grid.T, p=problem.p, seed=problem.seed)
        self.report.add("verify.seed", problem.seed)
        self.report.add("verify.N", problem.grid.N)
        rows = []
        for name in problem.verify_checks:
            try:
                check = CheckFactory.create_check(name)
            except KeyError as e:
                raise SchemaError([f"verify/checks: {e.args[0]}"]) from e
            with self.stage(name):
                outcome = check.run(ctx)
            self.report.extend(f"check.{name}", outcome.to_dict())
            if not outcome.passed:
                self.report.fail()
            rows.append((name, format_value(outcome.measured), format_value(outcome.threshold), outcome.passed))
        print("\n=== Verification Matrix ===")
        if rows:
            print(render_matrix(rows))
            for name, ms in self.report.stages.items():
                print(f"  {name}: {ms:.1f} ms")
        passed = sum(1 for row in rows if row[3])
        print(f"Passed {passed}/{len(rows)}")
        print("=" * 27)

    # ------------------------------------------------------------------ driver

    def run(self, verb: str, path: str) -> RunReport:
        self.report = RunReport(verb)
        _, report_path = default_output_paths(path)
        try:
            with self.stage("load"):
                problem = load_problem_file(path, self.seed)
            report_path = problem.report_path
            self.report.add("problem.file", path)
            if verb == "classify":
                self.run_classify(problem)
            elif verb == "solve":
                self.run_solve(problem)
            else:
                self.run_verify(problem)
        except SchemaError as e:
            for k, message in enumerate(e.messages):
                self.report.add(f"schema.{k}", message)
            self.report.fail(str(e))
            print(f"Error: invalid problem file: {e}", file=sys.stderr)
        except OpcontourError as e:
            self.report.fail(f"{type(e).__name__}: {e}")
            print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        atomic_write_text(report_path, self.report.render())
        logger.info("%s finished with status %s", verb, self.report.status.value)
        return self.report

    def cleanup(self) -> None:
        """Remove temporary files of interrupted writes."""
        remove_pending_files()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the exit code."""
    setup_logging()
    args = validate_arguments(parse_arguments(argv))
    if args.verbose:
        enable_verbose_logging()

    # Handle special modes that don't need a problem file
    if args.list_checks:
        CheckFactory.list_checks()
        return 0

    configure_threads(args.threads)
    orchestrator = OpcontourOrchestrator(args.allow_trace_warnings, args.seed)
    install_interrupt_cleanup(orchestrator.cleanup)
    try:
        report = orchestrator.run(args.verb, args.problem_file)
    finally:
        orchestrator.cleanup()
    print(f"Status: {report.status.value}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
