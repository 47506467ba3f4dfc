"""Coefficient files and report serialization.

Coefficient files are whitespace-separated text, one record per line:
``n re im`` for a single series or ``m n re im`` for a double series.
Blank lines and anything after ``#`` are ignored.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from pathlib import Path

import numpy as np

from .bivariate import BivariateDirichletSeries
from .dirichlet import DirichletSeries


class CoefficientFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def parse_coefficients(text: str, source: str = "<input>") -> DirichletSeries | BivariateDirichletSeries:
    records: dict = {}
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (3, 4):
            raise CoefficientFileError(f"expected 3 or 4 fields, got {len(fields)}", lineno, source)
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise CoefficientFileError("mixed single and double series records", lineno, source)
        try:
            idx = tuple(int(x) for x in fields[:-2])
        except ValueError:
            raise CoefficientFileError(f"index is not an integer in {line!r}", lineno, source) from None
        try:
            re_, im_ = float(fields[-2]), float(fields[-1])
        except ValueError:
            raise CoefficientFileError(f"coefficient is not a number in {line!r}", lineno, source) from None
        if any(i < 1 for i in idx):
            raise CoefficientFileError(f"indices must be >= 1, got {idx}", lineno, source)
        if not (math.isfinite(re_) and math.isfinite(im_)):
            raise CoefficientFileError("non-finite coefficient", lineno, source)
        if idx in records:
            raise CoefficientFileError(f"duplicate index {idx}", lineno, source)
        records[idx] = complex(re_, im_)
    if not records:
        raise CoefficientFileError("no coefficient records", None, source)
    if width == 3:
        series = DirichletSeries({k[0]: v for k, v in records.items()})
    else:
        series = BivariateDirichletSeries(records)
    if not series:
        raise CoefficientFileError("all coefficients are zero", None, source)
    return series


def read_coefficients(path: str | Path) -> DirichletSeries | BivariateDirichletSeries:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise CoefficientFileError(str(exc), None, str(p)) from None
    return parse_coefficients(text, str(p))


def format_coefficients(series: DirichletSeries | BivariateDirichletSeries) -> str:
    lines = []
    for key, v in series:
        idx = " ".join(str(k) for k in key) if isinstance(key, tuple) else str(key)
        lines.append(f"{idx} {v.real!r} {v.imag!r}")
    return "\n".join(lines) + "\n"


def write_coefficients(series, path: str | Path) -> None:
    Path(path).write_text(format_coefficients(series))


def input_digest(series: DirichletSeries | BivariateDirichletSeries) -> str:
    """Digest of the canonical coefficient text, independent of file layout."""
    return hashlib.sha256(format_coefficients(series).encode()).hexdigest()


def jsonable(obj):
    """Recursively convert to JSON-safe values; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (complex, np.complexfloating)):
        return [jsonable(obj.real), jsonable(obj.imag)]
    if hasattr(obj, "value"):  # enums
        return obj.value
    return obj


def dumps_json(payload: dict) -> str:
    return json.dumps(jsonable(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _flatten(d: dict, prefix: str = "") -> list[tuple[str, object]]:
    out = []
    for k in sorted(d):
        v = d[k]
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.extend(_flatten(v, key + "."))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            for i, item in enumerate(v):
                out.extend(_flatten(item, f"{key}.{i}."))
        else:
            out.append((key, json.dumps(v) if isinstance(v, list) else v))
    return out


def dumps_key_value_csv(payload: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    w.writerows(_flatten(jsonable(payload)))
    return buf.getvalue()


def dumps_table_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in jsonable(row)])
    return buf.getvalue()
