"""
Check records and byte-deterministic report serialization.

Wall times live only in the top-level ``timing`` field, so two runs with the
same configuration produce identical bytes once that field is dropped.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .exactlin import format_fraction

REPORT_VERSION = "1.0"
STATUSES = ("pass", "fail", "incomplete")


class ReportError(OSError):
    """The report could not be written."""


def jsonable(x: Any) -> Any:
    """Plain JSON data with a stable layout: fractions as ``p/q`` strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, float):
        return x
    if hasattr(x, "to_text"):
        return x.to_text()
    if isinstance(x, dict):
        return {_key(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _key(k: Any) -> str:
    if hasattr(k, "to_text"):
        return k.to_text()
    if isinstance(k, tuple):
        return " ".join(map(str, k))
    return str(k)


@dataclass
class Check:
    name: str
    inputs: dict
    expected: Any
    actual: Any
    status: str
    detail: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def record(self) -> dict:
        return jsonable({
            "name": self.name,
            "inputs": self.inputs,
            "expected": self.expected,
            "actual": self.actual,
            "status": self.status,
            "detail": self.detail,
        })


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def add(self, check: Check, seconds: Optional[float] = None) -> Check:
        if any(c.name == check.name for c in self.checks):
            raise ValueError(f"check {check.name!r} already recorded")
        self.checks.append(check)
        if seconds is not None:
            self.timing[check.name] = round(seconds, 3)
        return check

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    @property
    def incomplete(self) -> bool:
        return any(c.status == "incomplete" for c in self.checks)

    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.incomplete:
            return 3
        return 0

    def canonical(self) -> "Report":
        """Checks sorted by name, so parallel runs serialize identically."""
        return Report(sorted(self.checks, key=lambda c: c.name), list(self.output), dict(self.timing))

    def to_json(self, timing: bool = True) -> str:
        doc = {
            "version": REPORT_VERSION,
            "checks": [c.record() for c in self.checks],
        }
        if self.output:
            doc["output"] = list(self.output)
        if timing:
            doc["timing"] = {k: self.timing[k] for k in sorted(self.timing)}
        return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "status", "inputs", "expected", "actual", "detail"])
        for c in self.checks:
            rec = c.record()
            w.writerow([rec["name"], rec["status"],
                        json.dumps(rec["inputs"], sort_keys=True),
                        json.dumps(rec["expected"], sort_keys=True),
                        json.dumps(rec["actual"], sort_keys=True),
                        rec["detail"]])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = list(self.output)
        for c in self.checks:
            rec = c.record()
            line = f"{c.status.upper():10s} {c.name}: expected {_short(rec['expected'])}, got {_short(rec['actual'])}"
            if c.detail:
                line += f" ({c.detail})"
            lines.append(line)
        n_pass = sum(c.passed for c in self.checks)
        lines.append(f"{n_pass}/{len(self.checks)} checks passed")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str, timing: bool = True) -> str:
        if fmt == "json":
            return self.to_json(timing)
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


def _short(value: Any, limit: int = 120) -> str:
    text = json.dumps(value, sort_keys=True, ensure_ascii=False)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def emit_report(report: Report, fmt: str, path: Optional[str | Path] = None,
                timing: bool = True) -> str:
    """Serialize and write (or just return, when ``path`` is None) the report."""
    text = report.render(fmt, timing)
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ReportError(f"cannot write report to {path}: {exc}") from exc
    return text


__all__ = ["Check", "Report", "ReportError", "emit_report", "jsonable", "REPORT_VERSION"]
