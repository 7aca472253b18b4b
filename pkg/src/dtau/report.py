"""Deterministic CSV and JSON emission; exact values serialize as num/den."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

from .field import fmt_scalar


def fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (Fraction, int, float)):
        return fmt_scalar(v)
    return str(v)


def write_csv(path, columns, records):
    """records: iterable of dicts keyed by column name, already stringified."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        for rec in records:
            writer.writerow({k: rec.get(k, "") for k in columns})
    return path


def rows_to_records(rows, columns):
    out = []
    for row in rows:
        if hasattr(row, "as_record"):
            out.append(row.as_record())
        else:
            out.append({c: fmt_value(getattr(row, c)) for c in columns})
    return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return fmt_scalar(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    return path


def dumps(payload) -> str:
    return json.dumps(_jsonable(payload), indent=2, sort_keys=True)
