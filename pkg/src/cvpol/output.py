"""Byte-deterministic JSON and CSV rendering of reports and sweeps.

Floats are written with 9 significant digits, `.` decimal separator and
`\n` line endings.  Flagged (zero-bound) criterion values are emitted as
null in JSON and empty fields in CSV, with the flag carried in a dedicated
column, so output files never contain non-finite numbers.
"""

from __future__ import annotations

import json
import math

from .criteria import CriterionResult, EllipsePoint
from .runner import Report, SweepTable, flatten_result
from .stokes import StokesMeans


def fmt(x: float) -> str:
    return format(float(x), ".9g")


def _rounded(x: float) -> float | None:
    if math.isnan(x) or math.isinf(x):
        return None
    return float(fmt(x))


def _result_dict(result) -> dict:
    if isinstance(result, CriterionResult):
        return {
            "kind": "criterion",
            "value": _rounded(result.value),
            "bound": _rounded(result.bound),
            "sign_choice": list(result.sign_choice) if result.sign_choice else None,
            "gain": [_rounded(g) for g in result.gain] if result.gain else None,
            "correlation_term": _rounded(result.correlation_term),
            "zero_bound": result.zero_bound,
        }
    if isinstance(result, StokesMeans):
        return {
            "kind": "stokes_means",
            "s0": _rounded(result.s0),
            "s1": _rounded(result.s1),
            "s2": _rounded(result.s2),
            "s3": _rounded(result.s3),
        }
    if isinstance(result, EllipsePoint):
        return {
            "kind": "ellipse",
            "conditioned_on": result.conditioned_on,
            "conditional": _rounded(result.conditional),
            "unconditional": _rounded(result.unconditional),
            "others": {
                f"S{idx}": _rounded(var)
                for idx, var in zip(result.other_indices, result.other_variances)
            },
            "gain": _rounded(result.gain),
        }
    raise TypeError(f"cannot serialize {type(result).__name__}")


def report_json(report: Report, scenario: str) -> str:
    doc = {
        "scenario": scenario,
        "params": {name: _rounded(value) for name, value in report.params.items()},
        "measurements": {name: _result_dict(result) for name, result in report.entries},
        "warnings": list(report.warnings),
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


RUN_CSV_HEADER = "scenario,params,measurement,quantity,value,sign_choice,gain,correlation_term,flags"


def report_csv(report: Report, scenario: str) -> str:
    params = ";".join(f"{name}={fmt(value)}" for name, value in report.params.items())
    lines = [RUN_CSV_HEADER]
    for name, result in report.entries:
        sign = gain = correlation = flags = ""
        if isinstance(result, CriterionResult):
            sign = ";".join(result.sign_choice) if result.sign_choice else ""
            gain = ";".join(fmt(g) for g in result.gain) if result.gain else ""
            correlation = fmt(result.correlation_term)
            flags = "zero_bound" if result.zero_bound else ""
        for column, value in flatten_result(name, result):
            quantity = column[len(name) + 1:] if column != name else "value"
            cell = "" if math.isnan(value) else fmt(value)
            lines.append(
                f"{scenario},{params},{name},{quantity},{cell},{sign},{gain},{correlation},{flags}"
            )
    return "\n".join(lines) + "\n"


def sweep_csv(table: SweepTable) -> str:
    header = ",".join([table.param, *table.columns, "flags"])
    lines = [header]
    for value, row, flags in zip(table.values, table.rows, table.flags):
        cells = [fmt(value)]
        cells.extend("" if math.isnan(v) else fmt(v) for v in row)
        cells.append(flags)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


FIG4_CSV_HEADER = ("conditioned_on,conditional,unconditional,"
                   "other_index_1,other_unconditional_1,"
                   "other_index_2,other_unconditional_2,dashed_bound")


def ellipse_csv(points: list[EllipsePoint], dashed_bound: float = 1.0) -> str:
    lines = [FIG4_CSV_HEADER]
    for p in points:
        (i1, i2) = p.other_indices
        (v1, v2) = p.other_variances
        lines.append(
            f"{p.conditioned_on},{fmt(p.conditional)},{fmt(p.unconditional)},"
            f"{i1},{fmt(v1)},{i2},{fmt(v2)},{fmt(dashed_bound)}"
        )
    return "\n".join(lines) + "\n"
