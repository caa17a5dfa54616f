"""Shared sample type for points on or around the capacity function."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactnum import QuadNum

KIND_CLASS = "class-obstruction"
KIND_ECH = "ech-ratio"
KIND_EMBEDDING = "embedding"
KIND_CORNER = "corner"
KIND_VOLUME_ONLY = "volume-only"
#: A truncated capacity-ratio max that fails the squared volume comparison:
#: the volume curve is the binding lower bound there, not the reported lam.
KIND_VOLUME_CMP = "volume-comparison"


@dataclass(frozen=True)
class BoundSample:
    """A point (z, lambda) with the provenance of the bound it witnesses.

    `lam` is None only for the volume-only sentinel (the volume curve is
    never constructed exactly; it is compared by squaring and rendered in
    decimals elsewhere).
    """

    z: QuadNum
    lam: Optional[QuadNum]
    kind: str
    label: str = ""

    def to_json(self) -> dict:
        return {
            "z": self.z.to_json(),
            "lambda": None if self.lam is None else self.lam.to_json(),
            "kind": self.kind,
            "label": self.label,
        }
