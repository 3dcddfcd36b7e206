"""Byte-stable JSON and plain-text rendering of command reports."""

from __future__ import annotations

import enum
import json
from fractions import Fraction


def to_plain(obj):
    """Convert a report tree to JSON-ready values; rationals become "a/b"."""
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return str(obj)


def _integral(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def check(name, expected, got, passed=None):
    """One named comparison; integral rationals are shown as integers."""
    expected, got = _integral(expected), _integral(got)
    if passed is None:
        passed = expected == got
    return {"name": name, "expected": expected, "got": got, "pass": bool(passed)}


def render_betti(entries) -> str:
    """Aligned grid: one row per homological degree i, one column per internal degree j."""
    if not entries:
        return "(empty)"
    cells = {(e["i"], e["j"]): e["b"] for e in entries}
    rows = sorted({i for i, _ in cells})
    cols = list(range(min(j for _, j in cells), max(j for _, j in cells) + 1))
    header = ["i\\j"] + [str(j) for j in cols]
    body = [[str(i)] + [str(cells.get((i, j), ".")) for j in cols] for i in rows]
    widths = [max(len(r[k]) for r in [header] + body) for k in range(len(header))]
    lines = []
    for r in [header] + body:
        lines.append(" ".join(c.rjust(wd) for c, wd in zip(r, widths)).rstrip())
    return "\n".join(lines)


def _decimal(frac: str) -> str:
    num, den = frac.split("/")
    return f"{int(num) / int(den):.6f}"


def _render_value(value, indent=0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render_value(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)):
                sub = _render_value(v, indent + 1)
                lines.append(f"{pad}- " + sub[0].strip() if sub else f"{pad}-")
                lines.extend(sub[1:])
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, str) and v.count("/") == 1 and v.replace("/", "").lstrip("-").isdigit():
        return f"{v} (~{_decimal(v)})"
    if v is None:
        return "-"
    if isinstance(v, list) and not v:
        return "[]"
    if isinstance(v, dict) and not v:
        return "{}"
    return str(v)


def render_table(doc: dict) -> str:
    out = [f"command: {doc.get('command')}"]
    if "error" in doc:
        err = doc["error"]
        out.append(f"error [{err.get('code')}]: {err.get('message')}")
        return "\n".join(out) + "\n"
    result = doc.get("result")
    if doc.get("command") == "betti" and isinstance(result, dict) and "table" in result:
        out.append("betti table:")
        out.append(render_betti(result["table"]))
        rest = {k: v for k, v in result.items() if k != "table"}
        out.extend(_render_value(rest))
    else:
        out.append("result:")
        out.extend(_render_value(result, 1))
    checks = doc.get("checks", [])
    out.append(f"checks: {len(checks)}")
    for c in checks:
        mark = "PASS" if c["pass"] else "FAIL"
        out.append(f"  [{mark}] {c['name']}: expected {_scalar(c['expected'])}, got {_scalar(c['got'])}")
    if doc.get("timing_ms") is not None:
        out.append(f"timing_ms: {doc['timing_ms']}")
    return "\n".join(out) + "\n"


def emit(report: dict, format: str = "json") -> str:
    """Serialize a report; JSON keys are sorted so output is byte-stable."""
    doc = to_plain(report)
    if format == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if format == "table":
        return render_table(doc)
    raise ValueError(f"unknown format {format!r}")
