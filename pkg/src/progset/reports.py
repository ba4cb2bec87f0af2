"""Report envelope and JSON/CSV serialization.

JSON schema: a single object with keys command, params, field, seed, version,
timing_ms, result.  Integers beyond 2^53 are serialized as decimal strings and
exact rationals as {"num": "...", "den": "..."} so nothing loses precision in
a double-based JSON reader.  CSV output is one header row plus data rows,
UTF-8, LF line endings.  timing_ms is the only intentionally nonreproducible
field.
"""

from __future__ import annotations

import dataclasses
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import IoError

_JSON_INT_LIMIT = 1 << 53


@dataclass
class PropertyReport:
    """Outcome of a verification suite that ran to completion.

    max_residual is the suite's headline statistic: an absolute residual for
    identity suites, a |sum|/bound ratio for bound suites.
    """

    suite: str
    passed: bool
    checks: int
    max_residual: float
    tolerance: float | None = None
    details: dict = field(default_factory=dict)


@dataclass
class ReportEnvelope:
    command: str
    params: dict
    field: dict | None
    seed: int | None
    version: str
    timing_ms: float
    result: object


def jsonable(obj):
    """Recursively convert payloads to JSON-safe structures."""
    if obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, bool):  # bool before int: bool is an int subclass
        return obj
    if isinstance(obj, int):
        return obj if abs(obj) < _JSON_INT_LIMIT else str(obj)
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.generic):
        return jsonable(obj.item())
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in dataclasses.fields(obj):
            out[f.name] = jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "indices") and hasattr(obj, "q"):  # ElementSet duck type
        return {"q": obj.q, "card": obj.card, "elements": [int(i) for i in obj.indices()]}
    return str(obj)


def render_json(env: ReportEnvelope) -> str:
    doc = {
        "command": env.command,
        "params": jsonable(env.params),
        "field": jsonable(env.field),
        "seed": jsonable(env.seed),
        "version": env.version,
        "timing_ms": env.timing_ms,
        "result": jsonable(env.result),
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple, np.ndarray)):
        return ";".join(_csv_cell(x) for x in v)
    if isinstance(v, dict):
        return ";".join(f"{k}={_csv_cell(x)}" for k, x in v.items())
    if dataclasses.is_dataclass(v) and not isinstance(v, type):
        return _csv_cell(dataclasses.asdict(v))
    if isinstance(v, np.generic):
        return _csv_cell(v.item())
    return str(v)


def payload_rows(payload) -> tuple[list[str], list[list[str]]]:
    """Flatten a payload to CSV headers and rows.

    Tabular payloads (anything with a `rows` attribute holding dataclasses or
    dicts) contribute one CSV row per entry; scalar reports become one row.
    """
    rows_attr = getattr(payload, "rows", None)
    if rows_attr is not None:
        entries = list(rows_attr)
        if not entries:
            return [], []
        first = entries[0]
        if dataclasses.is_dataclass(first):
            headers = [f.name for f in dataclasses.fields(first)]
            rows = [[_csv_cell(getattr(e, h)) for h in headers] for e in entries]
        else:
            headers = list(first.keys())
            rows = [[_csv_cell(e[h]) for h in headers] for e in entries]
        return headers, rows
    if dataclasses.is_dataclass(payload) and not isinstance(payload, type):
        headers = [f.name for f in dataclasses.fields(payload)]
        return headers, [[_csv_cell(getattr(payload, h)) for h in headers]]
    if isinstance(payload, dict):
        headers = list(payload.keys())
        return headers, [[_csv_cell(payload[h]) for h in headers]]
    return ["value"], [[_csv_cell(payload)]]


def render_csv(env: ReportEnvelope) -> str:
    headers, rows = payload_rows(env.result)
    buf = io.StringIO()
    buf.write(",".join(headers) + "\n")
    for row in rows:
        buf.write(",".join(_quote(c) for c in row) + "\n")
    return buf.getvalue()


def _quote(cell: str) -> str:
    if any(ch in cell for ch in ',"\n'):
        return '"' + cell.replace('"', '""') + '"'
    return cell


def write_report(env: ReportEnvelope, fmt: str = "json", path: str | None = None) -> None:
    """Emit the envelope as JSON or CSV to a path or standard output."""
    if fmt == "json":
        text = render_json(env)
    elif fmt == "csv":
        text = render_csv(env)
    else:
        raise IoError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot write report to {path}: {exc}") from exc
