"""Deterministic report serialization.

JSON reports are emitted by a small writer of our own so the byte stream is
fixed by the data alone: insertion-ordered keys, floats at 17 significant
digits, complex numbers as {"re": ..., "im": ...}, and non-finite values as
the strings "inf"/"-inf"/"nan" (JSON has no literals for them).  CSV gets the
same float formatting with a caller-pinned column order.
"""

from __future__ import annotations

import json
import math
from typing import Mapping, Sequence

import numpy as np

SCHEMA_VERSION = 1


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _normalize(v):
    """Reduce numpy scalars and exotic containers to plain python."""
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.complexfloating,)):
        return complex(v)
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.ndarray):
        return v.tolist()
    return v


def dumps_canonical(obj, indent: int = 2) -> str:
    """Canonical JSON text; dict key order is preserved as given."""

    def emit(v, depth: int) -> str:
        v = _normalize(v)
        pad = " " * (indent * depth)
        pad_in = " " * (indent * (depth + 1))
        if v is None:
            return "null"
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            s = format_float(v)
            return json.dumps(s) if s in ("inf", "-inf", "nan") else s
        if isinstance(v, complex):
            return emit({"re": v.real, "im": v.imag}, depth)
        if isinstance(v, str):
            return json.dumps(v)
        if isinstance(v, Mapping):
            if not v:
                return "{}"
            parts = [
                f"{pad_in}{json.dumps(str(k))}: {emit(val, depth + 1)}"
                for k, val in v.items()
            ]
            return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
        if isinstance(v, (list, tuple)):
            if not len(v):
                return "[]"
            parts = [f"{pad_in}{emit(item, depth + 1)}" for item in v]
            return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
        raise TypeError(f"cannot serialize {type(v).__name__}")

    return emit(obj, 0) + "\n"


def csv_cell(v) -> str:
    v = _normalize(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, complex):
        return f"{format_float(v.real)}{'+' if v.imag >= 0 else '-'}{format_float(abs(v.imag))}j"
    s = str(v)
    if any(ch in s for ch in ",\"\n"):
        s = '"' + s.replace('"', '""') + '"'
    return s


def dumps_csv(columns: Sequence[str], rows: Sequence[Mapping]) -> str:
    """CSV text with the given column order; missing cells are empty."""
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(csv_cell(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"
