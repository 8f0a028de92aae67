"""Render results as JSON, CSV or plain text.

Numbers are written as strings with 17 significant digits and exact
rationals as "p/q", so that repeated runs give byte-identical reports.
"""
from __future__ import annotations

from enum import Enum
from typing import Any, Iterable, Sequence
import csv
import io
import json

from ..certificates.results import (Certificate, Expectation, ScopeError,
                                    ToleranceMode, format_float,
                                    format_rational)
from ..model.functions import BmnReference
from ..oracle.minimize import OracleEstimate
from ..oracle.scan import SlopeScanRow
from .columns import (BmnColumn, ConstantsColumn, OracleColumn, ScanColumn,
                      StepColumn, header, title)
from .settings import OutputFormat


def to_json(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def to_csv(columns: type[Enum], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header(columns))
    writer.writerows(rows)
    return buffer.getvalue()


def to_text(columns: type[Enum], rows: Iterable[Sequence[Any]]) -> str:
    table = [[title(c) for c in columns]]
    table += [[str(cell) for cell in row] for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    return "".join("  ".join(cell.ljust(w) for (cell, w)
                             in zip(row, widths)).rstrip() + "\n"
                   for row in table)


def _tabular(fmt: OutputFormat, columns: type[Enum],
             rows: list[Sequence[Any]], document: Any) -> str:
    if fmt is OutputFormat.JSON:
        return to_json(document)
    if fmt is OutputFormat.CSV:
        return to_csv(columns, rows)
    return to_text(columns, rows)


def rejection_dict(error: ScopeError) -> dict[str, Any]:
    return {"pair": {"m": error.pair.m, "n": error.pair.n},
            "verdict": "rejected",
            "reasons": list(error.reasons)}


def _step_rows(item: Certificate | ScopeError) -> list[list[Any]]:
    if isinstance(item, ScopeError):
        return [[item.pair.m, item.pair.n, "", "rejected", ""]]
    return [[item.pair.m, item.pair.n, step.step_id, step.status.label,
             format_float(step.margin)] for step in item.steps]


def render_certificates(items: Sequence[Certificate | ScopeError],
                        fmt: OutputFormat, batch: bool = False) -> str:
    """A single certificate, or an array when batch is set."""
    documents = [rejection_dict(item) if isinstance(item, ScopeError)
                 else item.to_dict() for item in items]
    rows = [row for item in items for row in _step_rows(item)]
    return _tabular(fmt, StepColumn, rows,
                    documents if batch else documents[0])


def constant_rows(expectations: Sequence[Expectation]) -> list[list[Any]]:
    return [[e.name, format_float(e.enclosure.lo),
             format_float(e.enclosure.hi), e.expected.reported_value,
             format_float(float(e.tol)), e.ok] for e in expectations]


def render_constants(expectations: Sequence[Expectation],
                     mode: ToleranceMode, fmt: OutputFormat) -> str:
    rows = constant_rows(expectations)
    document = {"tolerances": mode.name.lower(),
                "rows": [dict(zip(header(ConstantsColumn), row))
                         for row in rows],
                "all_pass": all(e.ok for e in expectations)}
    return _tabular(fmt, ConstantsColumn, rows, document)


def oracle_row(estimate: OracleEstimate) -> list[Any]:
    return [estimate.pair.m, estimate.pair.n,
            format_float(estimate.argmin_x),
            format_float(estimate.min_value),
            format_rational(estimate.f_at_zero), estimate.works,
            format_float(estimate.slack)]


def oracle_dict(estimate: OracleEstimate) -> dict[str, Any]:
    return {"pair": {"m": estimate.pair.m, "n": estimate.pair.n},
            "argmin": format_float(estimate.argmin_x),
            "min": format_float(estimate.min_value),
            "f0": format_rational(estimate.f_at_zero),
            "works": estimate.works,
            "slack": format_float(estimate.slack),
            "grid_points": estimate.grid_points,
            "refinement_iterations": estimate.refinement_iterations}


def render_oracle(estimate: OracleEstimate, fmt: OutputFormat) -> str:
    return _tabular(fmt, OracleColumn, [oracle_row(estimate)],
                    oracle_dict(estimate))


def _optional(value: Any) -> Any:
    return "" if value is None else value


def scan_row_values(row: SlopeScanRow) -> list[Any]:
    slope = None if row.slope is None else format_float(float(row.slope))
    return [row.m, _optional(row.n_max_works), _optional(slope),
            _optional(row.first_failure_n), row.conjectured_n_max]


def render_scan(rows: Sequence[SlopeScanRow], fmt: OutputFormat) -> str:
    document = [{"m": row.m,
                 "n_max_works": row.n_max_works,
                 "slope": (None if row.slope is None
                           else format_float(float(row.slope))),
                 "first_failure_n": row.first_failure_n,
                 "conjectured_n_max": row.conjectured_n_max}
                for row in rows]
    return _tabular(fmt, ScanColumn, [scan_row_values(r) for r in rows],
                    document)


def bmn_row(reference: BmnReference, estimate: OracleEstimate) -> list[Any]:
    expected = (None if reference.expected is None
                else format_rational(reference.expected))
    return [reference.pair.m, reference.pair.n,
            reference.basis.name.lower(), reference.basis.value,
            format_rational(reference.f_at_zero), _optional(expected),
            _optional(reference.condition_2_expected),
            format_float(estimate.min_value),
            format_float(estimate.argmin_x), estimate.works]


def render_bmn(reference: BmnReference, estimate: OracleEstimate,
               fmt: OutputFormat) -> str:
    document = {"pair": {"m": reference.pair.m, "n": reference.pair.n},
                "basis": reference.basis.name.lower(),
                "description": reference.basis.value,
                "f0": format_rational(reference.f_at_zero),
                "expected": (None if reference.expected is None
                             else format_rational(reference.expected)),
                "condition_2_expected": reference.condition_2_expected,
                "oracle": oracle_dict(estimate)}
    return _tabular(fmt, BmnColumn, [bmn_row(reference, estimate)],
                    document)
