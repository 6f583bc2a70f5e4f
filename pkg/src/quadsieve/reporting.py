"""Verdict reports for inequality checks and deterministic serialization.

Every verifier in this package returns a :class:`BoundReport`.  The verdict
convention is fixed: pass means lhs <= rhs + error_budget, where the budget
accounts for float rounding in the two sides (0.0 when both sides were
computed exactly).  A fail on mathematically valid input is a defect, not an
expected outcome.

Serialization is deterministic byte for byte: floats are written with 17
significant digits, rationals as "num/den" strings, and key order is the
fixed construction order of each payload.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .exact import format_rational

__all__ = ["BoundReport", "json_text"]


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking lhs <= rhs with an explicit rounding allowance."""

    lhs: float
    rhs: float
    factors: dict
    error_budget: float
    passed: bool

    @classmethod
    def from_sides(cls, lhs, rhs, factors: Mapping[str, Any], error_budget=0.0) -> "BoundReport":
        # The verdict is decided on the values as given, and a zero budget
        # is never added: float(0.0) + Fraction would silently demote an
        # exact right side to a rounded one.  Sides are rounded only for
        # display in the stored report.
        bound = rhs if error_budget == 0 else rhs + error_budget
        verdict = bool(lhs <= bound)
        return cls(float(lhs), float(rhs), dict(factors), float(error_budget), verdict)

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "error_budget": self.error_budget,
            "pass": self.passed,
            "factors": dict(self.factors),
        }


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports never contain NaN or infinity")
    return format(x, ".17g")


def _escape(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch in ("\n", "\r", "\t"):
            out.append({"\n": "\\n", "\r": "\\r", "\t": "\\t"}[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def _emit(value: Any, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        out.append(_format_float(value))
    elif isinstance(value, Fraction):
        out.append(_escape(format_rational(value)))
    elif isinstance(value, str):
        out.append(_escape(value))
    elif isinstance(value, BoundReport):
        _emit(value.to_dict(), out)
    elif isinstance(value, Mapping):
        out.append("{")
        first = True
        for key, item in value.items():
            if not isinstance(key, str):
                raise TypeError(f"JSON keys must be strings, got {key!r}")
            if not first:
                out.append(",")
            first = False
            out.append(_escape(key))
            out.append(":")
            _emit(item, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def json_text(value: Any) -> str:
    """Deterministic JSON: %.17g floats, "num/den" rationals, fixed key order."""
    out: list[str] = []
    _emit(value, out)
    return "".join(out)
