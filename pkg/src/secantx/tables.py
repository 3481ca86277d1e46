"""Rendering solve reports as aligned tables, CSV and JSON.

All three formats are built from the same formatted strings, so they carry
identical numeric content. Absent entries print as ``*`` in tables, empty
cells in CSV and ``null`` in JSON.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

from .analysis import empirical_order, sigma_sequence
from .iterate import SolveReport
from .realnum import format_real

COLUMNS = ("n", "x_n", "f_n", "epsilon_n", "sigma_n", "order_n")
ABSENT = "*"


@dataclass(frozen=True)
class OutputRow:
    n: int
    x: str
    f: str
    epsilon: Optional[str] = None
    sigma: Optional[str] = None
    order_estimate: Optional[str] = None

    def cells(self) -> List[Optional[str]]:
        return [str(self.n), self.x, self.f, self.epsilon, self.sigma, self.order_estimate]

    def as_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "x": self.x,
            "f": self.f,
            "epsilon": self.epsilon,
            "sigma": self.sigma,
            "order_estimate": self.order_estimate,
        }


def _fmt(value, digits: int) -> Optional[str]:
    return None if value is None else format_real(value, digits)


def report_rows(report: SolveReport, digits: int = 17, aux_digits: int = 4) -> List[OutputRow]:
    errors = report.errors
    have_root = report.known_root is not None
    sigmas = sigma_sequence(errors, report.k) if have_root else [None] * len(errors)
    orders = empirical_order(errors) if have_root else [None] * len(errors)
    return [
        OutputRow(
            n=rec.n,
            x=format_real(rec.x, digits),
            f=format_real(rec.f, digits),
            epsilon=_fmt(rec.error, aux_digits),
            sigma=_fmt(sigma, aux_digits),
            order_estimate=_fmt(order, aux_digits),
        )
        for rec, sigma, order in zip(report.records, sigmas, orders)
    ]


def render_table(header: Sequence[str], rows: Sequence[Sequence[Optional[str]]]) -> str:
    cells = [[ABSENT if c is None else c for c in row] for row in rows]
    widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Optional[str]]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if c is None else c for c in row])
    return buf.getvalue().rstrip("\n")


def render_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, indent=2)


def report_payload(config: Dict[str, Any], report: SolveReport, rows: Sequence[OutputRow]) -> Dict[str, Any]:
    return {
        "config": config,
        "records": [r.as_json() for r in rows],
        "termination": report.termination.value,
        "evaluations": report.evaluations,
    }


def render_report(fmt: str, config: Dict[str, Any], report: SolveReport, rows: Sequence[OutputRow]) -> str:
    if fmt == "json":
        return render_json(report_payload(config, report, rows))
    cells = [r.cells() for r in rows]
    if fmt == "csv":
        return render_csv(COLUMNS, cells)
    return render_table(COLUMNS, cells)
