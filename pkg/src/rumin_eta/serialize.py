"""Deterministic rendering of result records as JSON, NDJSON, and CSV.

Floats are always written with 17 significant digits (%.16e) so identical
invocations produce byte-identical output; the standard json module is
avoided for emission because it formats floats with shortest-round-trip
notation.
"""

from __future__ import annotations

import math

__all__ = [
    "format_float",
    "complex_parts",
    "render_json",
    "render_ndjson",
    "eta_record",
    "spectrum_csv",
]


def format_float(x: float) -> str:
    """Fixed 17-significant-digit scientific form; non-finite becomes null."""
    if not math.isfinite(x):
        return "null"
    return "%.16e" % x


def complex_parts(z) -> dict:
    """Real/imaginary record for a complex value; NaN parts become null."""
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _render(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, complex):
        return _render(complex_parts(value))
    if isinstance(value, str):
        escaped = (
            value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        return f'"{escaped}"'
    if isinstance(value, dict):
        items = ", ".join(f'"{k}": {_render(v)}' for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    raise TypeError(f"cannot render {type(value).__name__} deterministically")


def render_json(record) -> str:
    """One record as a single-line JSON document with stable field order."""
    return _render(record)


def render_ndjson(records) -> str:
    """Newline-delimited JSON, one record per line, trailing newline."""
    return "".join(render_json(r) + "\n" for r in records)


def eta_record(s, value, is_pole: bool, residue: float, tail_bound=None, **extra) -> dict:
    """The standard evaluation record shape shared by all eta outputs."""
    record = {
        "s": complex_parts(s),
        "value": complex_parts(value),
        "is_pole": bool(is_pole),
        "residue": float(residue),
        "tail_bound": None if tail_bound is None else float(tail_bound),
    }
    record.update(extra)
    return record


def spectrum_csv(eigenvalues) -> str:
    """CSV table `index,eigenvalue` with ascending index, 17 significant digits."""
    lines = ["index,eigenvalue"]
    for i, ev in enumerate(eigenvalues):
        lines.append(f"{i},{format_float(float(ev))}")
    return "\n".join(lines) + "\n"
