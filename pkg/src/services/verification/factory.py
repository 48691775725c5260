"""Factory for creating verification checks."""

from typing import Dict, List, Sequence

from ...config.models import get_check_spec, get_default_checks, VERIFY_CHECKS
from .base import BaseCheck, CheckOutcome, VerifyContext


class CheckFactory:
    """Factory for creating check instances."""

    @staticmethod
    def create_check(name: str) -> BaseCheck:
        """Create check instance for a registered name."""
        spec = get_check_spec(name)

        if spec.group == "linop":
            from .linop_checks import CHECKS
        elif spec.group == "classes":
            from .classes_checks import CHECKS
        elif spec.group == "time":
            from .timecalc_checks import CHECKS
        elif spec.group == "cauchy":
            from .cauchy_checks import CHECKS
        elif spec.group == "semilinear":
            from .semilinear_checks import CHECKS
        else:
            raise ValueError(f"Unknown check group: {spec.group}")

        return CHECKS[name](spec)

    @staticmethod
    def get_available_checks() -> Dict[str, str]:
        """Get registered checks and descriptions."""
        return {name: spec.description for name, spec in VERIFY_CHECKS.items()}

    @staticmethod
    def list_checks() -> None:
        """Print registered verification checks."""
        print("\n=== Available Verification Checks ===")
        group = None
        for name in get_default_checks():
            spec = get_check_spec(name)
            if spec.group != group:
                group = spec.group
                print(f"  [{group}]")
            print(f"    {name}")
            print(f"      {spec.description}")
        print("=" * 37)


def run_checks(names: Sequence[str], ctx: VerifyContext) -> List[CheckOutcome]:
    """Run checks in the given order."""
    return [CheckFactory.create_check(name).run(ctx) for name in names]
