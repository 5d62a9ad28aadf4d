"""Deterministic numeric formatting shared by CSV, JSON and SVG emitters."""

from __future__ import annotations

import json
import math


def fmt(x: float) -> str:
    """Format a float at 17 significant digits (round-trip exact for doubles)."""
    return format(float(x), ".17g")


def to_json(obj, indent: int = 0) -> str:
    """Serialize nested dicts/lists of scalars to JSON text.

    stdlib json cannot format floats at a fixed significand width, which the
    output contract requires, so this walks the structure itself. Non-finite
    floats serialize as null. Dict keys keep insertion order.
    """
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            f'{pad}  {json.dumps(str(k))}: {to_json(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        inner = ", ".join(to_json(v, indent + 1) for v in obj)
        return "[" + inner + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
