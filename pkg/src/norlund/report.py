"""Verification report record and its serialisations."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["VerificationReport", "tolerance_scale", "scaled", "format_value", "reports_to_json", "reports_to_csv"]

FIELDS = (
    "identity_id",
    "parameters",
    "lhs",
    "rhs",
    "residual",
    "tolerance",
    "passed",
    "notes",
    "quadrature_errors",
)


def tolerance_scale() -> float:
    """Multiplier from ``NORLUND_TOLERANCE_SCALE`` (default 1)."""
    raw = os.environ.get("NORLUND_TOLERANCE_SCALE", "").strip()
    if not raw:
        return 1.0
    value = float(raw)
    if not value > 0 or not math.isfinite(value):
        raise ValueError(f"NORLUND_TOLERANCE_SCALE must be a positive number, got {raw!r}")
    return value


def scaled(tol: float) -> float:
    return tol * tolerance_scale()


def format_value(v) -> str:
    """Exact values as ``p/q``; floats with 17 significant digits."""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return v.item()
    return v


@dataclass
class VerificationReport:
    """Outcome of one identity check.

    ``passed`` requires the residual to be within tolerance *and* every
    quadrature error estimate to be within half the tolerance.
    """

    identity_id: str
    parameters: dict
    lhs: object
    rhs: object
    residual: float
    tolerance: float
    passed: bool = field(default=False)
    notes: str = ""
    quadrature_errors: list = field(default_factory=list)

    @classmethod
    def build(cls, identity_id, parameters, lhs, rhs, residual, tolerance, notes="", quadrature_errors=(), extra_ok=True):
        qerr = [float(e) for e in quadrature_errors]
        residual = float(residual)
        ok = bool(
            extra_ok
            and residual <= tolerance
            and all(e <= tolerance / 2 for e in qerr)
        )
        return cls(identity_id, _jsonable(parameters), _jsonable(lhs), _jsonable(rhs), residual, float(tolerance), ok, notes, qerr)

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FIELDS}

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        missing = [k for k in FIELDS if k not in d]
        if missing:
            raise ValueError(f"report is missing fields {missing}")
        return cls(**{k: d[k] for k in FIELDS})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def reports_to_json(reports) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
    w.writerow(FIELDS)
    for r in reports:
        d = r.to_dict()
        w.writerow(
            [
                d["identity_id"],
                json.dumps(d["parameters"]),
                format_value(d["lhs"]),
                format_value(d["rhs"]),
                format_value(d["residual"]),
                format_value(d["tolerance"]),
                format_value(d["passed"]),
                d["notes"],
                ";".join(format_value(e) for e in d["quadrature_errors"]),
            ]
        )
    return buf.getvalue()
