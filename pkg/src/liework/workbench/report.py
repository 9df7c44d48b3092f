"""Deterministic JSON reports.

Everything except ``wall_time_s`` is covered by ``digest``; rationals are
rendered as ``"p/q"`` strings (integers as ``"p"``) and keys are sorted, so
identical inputs give byte-identical digest-covered sections.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .. import __version__
from ..exactla import Mat, Subspace
from ..liecore import AlgSubspace

TOOL = "liework"


def canonical(obj):
    """Convert to plain JSON values with exact rationals as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, AlgSubspace):
        obj = obj.space
    if isinstance(obj, Subspace):
        return {"dim": obj.dim, "ambient_dim": obj.ambient_dim, "basis": canonical(obj.basis)}
    if isinstance(obj, Mat):
        return [[str(x) for x in r] for r in obj.to_rows()]
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class Check:
    name: str
    subject: str
    ok: bool
    data: dict = field(default_factory=dict)
    message: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "subject": self.subject,
            "verdict": "pass" if self.ok else "fail",
            "data": canonical(self.data),
            "message": self.message,
        }


@dataclass
class Report:
    inputs: list[str]
    checks: list[Check]
    wall_time_s: float = 0.0

    def body(self) -> dict:
        return {
            "tool": {"name": TOOL, "version": __version__},
            "input_digest": sha256("\n\x00".join(self.inputs)),
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: (c.subject, c.name))],
        }

    def to_dict(self) -> dict:
        body = self.body()
        body["digest"] = sha256(dumps(body))
        body["wall_time_s"] = round(self.wall_time_s, 6)
        return body

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def digest_section(report_json: str) -> str:
    """The digest-covered part of a serialized report (drops the wall time)."""
    d = json.loads(report_json)
    d.pop("wall_time_s", None)
    return json.dumps(d, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
