"""Run reports, key=value rendering and atomic file output."""

import os
import tempfile
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Set, Tuple

import numpy as np

from ..config.models import RunStatus

_pending: Set[str] = set()


def format_value(value: Any) -> str:
    """Render a value for a key=value line with full double precision."""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return f"{value.real:.17g}{value.imag:+.17g}j"
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(item) for item in value)
    return str(value).replace("\n", " ")


def flatten(prefix: str, mapping: Mapping[str, Any]) -> List[Tuple[str, str]]:
    """Flatten nested mappings into dotted key=value pairs."""
    lines: List[Tuple[str, str]] = []
    for key, value in mapping.items():
        full_key = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, Mapping):
            lines.extend(flatten(full_key, value))
        else:
            lines.append((full_key, format_value(value)))
    return lines


@dataclass
class RunReport:
    """Outcome of one CLI run.

    Attributes:
        status: ok, warning or failed; determines the exit code.
        stages: wall time per stage in milliseconds. Shown on stdout only.
        lines: ordered key=value pairs written to the sidecar.
    """
    verb: str
    status: RunStatus = RunStatus.OK
    stages: Dict[str, float] = field(default_factory=dict)
    lines: List[Tuple[str, str]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return self.status.exit_code

    def add(self, key: str, value: Any) -> None:
        self.lines.append((key, format_value(value)))

    def extend(self, prefix: str, mapping: Mapping[str, Any]) -> None:
        self.lines.extend(flatten(prefix, mapping))

    def warn(self, message: str) -> None:
        self.warnings.append(message)
        self.status = self.status.worsen(RunStatus.WARNING)

    def fail(self, message: Optional[str] = None) -> None:
        if message:
            self.add("error", message)
        self.status = RunStatus.FAILED

    def render(self) -> str:
        header = [("verb", self.verb), ("status", self.status.value)]
        warning_lines = [(f"warning.{i}", w) for i, w in enumerate(self.warnings)]
        body = header + warning_lines + self.lines
        return "".join(f"{key}={value}\n" for key, value in body)


def atomic_write_text(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    os.makedirs(directory, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", newline="\n", dir=directory,
        prefix=".opcontour-", suffix=".tmp", delete=False,
    )
    _pending.add(handle.name)
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    finally:
        _pending.discard(handle.name)
        if os.path.exists(handle.name):
            os.remove(handle.name)


def remove_pending_files() -> None:
    """Delete temporary files of interrupted writes."""
    for name in list(_pending):
        if os.path.exists(name):
            os.remove(name)
        _pending.discard(name)


def render_matrix(rows: Iterable[Tuple[str, str, str, bool]]) -> str:
    """Fixed-width text table of name/measured/threshold/pass rows."""
    lines = [f"  {'check':<28} {'measured':>24} {'threshold':>24}  result"]
    for name, measured, threshold, passed in rows:
        mark = "✓" if passed else "✗"
        lines.append(f"  {name:<28} {measured:>24} {threshold:>24}  {mark}")
    return "\n".join(lines)
