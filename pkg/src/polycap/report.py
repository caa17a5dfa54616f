"""Uniform check-report entries: {check, k, status, lhs, rhs}."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import QuadNum


def entry(check: str, k: Optional[int], ok: bool, lhs, rhs) -> dict:
    def enc(v):
        if isinstance(v, QuadNum):
            return v.to_json()
        if isinstance(v, (int, Fraction)):
            return QuadNum.of(v).to_json()
        return v
    return {"check": check, "k": k, "status": "pass" if ok else "fail",
            "lhs": enc(lhs), "rhs": enc(rhs)}


def report_ok(report: Sequence[dict]) -> bool:
    return all(e["status"] == "pass" for e in report)
