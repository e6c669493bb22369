"""Machine-readable results shared by the counters, verifiers and the CLI."""

from __future__ import annotations

import csv
import io
import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .perm import CONVENTION_NOTE

MAX_COUNTEREXAMPLES = 25


@dataclass
class Report:
    check: str
    query: dict[str, Any] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)
    verified: bool | None = None
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    method: str = ""
    order: str | None = None
    skipped: bool = False
    note: str = ""
    elapsed_ms: float = 0.0

    def add_counterexample(self, item: dict[str, Any]):
        # the full number of failures always lives in counts
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            self.counterexamples.append(item)

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        out = {
            "check": self.check,
            "query": self.query,
            "counts": {k: int(v) for k, v in self.counts.items()},
            "verified": self.verified,
            "skipped": self.skipped,
            "note": self.note,
            "counterexamples": self.counterexamples,
            "method": self.method,
            "order": self.order,
            "convention": CONVENTION_NOTE,
            "version": __version__,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def csv_rows(self) -> list[dict[str, Any]]:
        params = ";".join(f"{k}={v}" for k, v in self.query.items())
        verified = "skipped" if self.skipped else self.verified
        rows = [
            {"check": self.check, "params": params, "value": f"{name}={value}",
             "verified": verified, "elapsed_ms": round(self.elapsed_ms, 3)}
            for name, value in self.counts.items()
        ]
        if not rows:
            rows.append({"check": self.check, "params": params, "value": "",
                         "verified": verified, "elapsed_ms": round(self.elapsed_ms, 3)})
        return rows


@contextmanager
def timed(report: Report):
    t0 = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = (time.perf_counter() - t0) * 1000.0


@dataclass
class AggregateReport:
    reports: list[Report]
    query: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def verified(self) -> bool:
        return all(r.verified is not False and not r.skipped for r in self.reports)

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        out = {
            "check": "all",
            "query": self.query,
            "verified": self.verified,
            "skipped": [r.check + _params(r) for r in self.reports if r.skipped],
            "checks": [r.to_dict(timings) for r in self.reports],
            "convention": CONVENTION_NOTE,
            "version": __version__,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out

    def csv_rows(self) -> list[dict[str, Any]]:
        return [row for r in self.reports for row in r.csv_rows()]


def _params(r: Report) -> str:
    return "(" + ",".join(f"{k}={v}" for k, v in r.query.items()) + ")"


CSV_FIELDS = ["check", "params", "value", "verified", "elapsed_ms"]


def to_json(report, timings: bool = True) -> str:
    return json.dumps(report.to_dict(timings), indent=2, ensure_ascii=False)


def to_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(report.csv_rows())
    return buf.getvalue()


def to_text(report) -> str:
    if isinstance(report, AggregateReport):
        lines = [to_text(r) for r in report.reports]
        lines.append(f"ALL: {'verified' if report.verified else 'NOT verified'}")
        return "\n".join(lines)
    status = ("skipped" if report.skipped else
              "" if report.verified is None else
              "verified" if report.verified else "FAILED")
    counts = ", ".join(f"{k}={v}" for k, v in report.counts.items())
    head = f"{report.check}{_params(report)}: {counts}"
    if status:
        head += f" [{status}]"
    for ce in report.counterexamples:
        head += "\n  counterexample: " + json.dumps(ce, ensure_ascii=False)
    return head
