"""Discovery report: theorems grouped by registry class, with stable colors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple


@dataclass
class TheoremEntry:
    kind: str  # identity | collinear | concyclic | parallel | perpendicular | congruent
    points: List[str]
    class_id: str
    color: int
    lines: Optional[List[List[str]]] = None
    axes: Optional[List[List[List[str]]]] = None  # perpendicular: two groups of lines
    segments: Optional[List[List[str]]] = None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "points": list(self.points)}
        if self.lines is not None:
            out["lines"] = [list(l) for l in self.lines]
        if self.axes is not None:
            out["axes"] = [[list(l) for l in axis] for axis in self.axes]
        if self.segments is not None:
            out["segments"] = [list(s) for s in self.segments]
        out["class_id"] = self.class_id
        out["color"] = self.color
        return out


@dataclass
class ConjectureRecord:
    statement: str
    verdict: str
    reason: Optional[str]
    ms: float

    def to_dict(self) -> dict:
        out = {"statement": self.statement, "verdict": self.verdict, "ms": round(self.ms, 3)}
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class DiscoveryReport:
    target: str
    theorems: List[TheoremEntry] = field(default_factory=list)
    halted: bool = False
    halt_reason: Optional[str] = None
    numeric_ms: float = 0.0
    symbolic_ms: float = 0.0
    verdict_log: List[ConjectureRecord] = field(default_factory=list)

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "target": self.target,
            "theorems": [t.to_dict() for t in self.theorems],
            "halted": self.halted,
        }
        if self.halted:
            out["halt_reason"] = self.halt_reason
        if include_timings:
            out["timings"] = {
                "numeric_ms": round(self.numeric_ms, 3),
                "symbolic_ms": round(self.symbolic_ms, 3),
                "per_conjecture": [r.to_dict() for r in self.verdict_log],
            }
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), indent=2)

    # -- human-readable rendering ------------------------------------------------

    def to_text(self) -> str:
        if self.halted:
            return (
                f"Discovery for {self.target} was halted: {self.halt_reason}\n"
                "The construction must be redrawn in a different way.\n"
            )
        if not self.theorems:
            return f"No non-trivial theorems found for {self.target}.\n"
        lines = [f"Discovered theorems for {self.target}:"]
        for t in self.theorems:
            lines.append("  " + sentence(t))
        return "\n".join(lines) + "\n"


def _join(names: List[str]) -> str:
    if len(names) <= 1:
        return "".join(names)
    if len(names) == 2:
        return f"{names[0]} and {names[1]}"
    return ", ".join(names[:-1]) + f" and {names[-1]}"


def _line_name(points: List[str]) -> str:
    return "".join(points[:2])


def sentence(t: TheoremEntry) -> str:
    if t.kind == "identity":
        return f"the points {_join(t.points)} are equal"
    if t.kind == "collinear":
        return f"{_join(t.points)} are collinear"
    if t.kind == "concyclic":
        return f"{_join(t.points)} are concyclic"
    if t.kind == "parallel":
        names = [_line_name(l) for l in (t.lines or [])]
        if len(names) == 2:
            return f"{names[0]} is parallel to {names[1]}"
        return f"{_join(names)} are parallel"
    if t.kind == "perpendicular":
        axis1, axis2 = t.axes or ([], [])
        n1 = [_line_name(l) for l in axis1]
        n2 = [_line_name(l) for l in axis2]
        if len(n1) == 1 and len(n2) == 1:
            return f"{n1[0]} is perpendicular to {n2[0]}"
        return f"{_join(n1)} are perpendicular to {_join(n2)}"
    if t.kind == "congruent":
        names = ["".join(s) for s in (t.segments or [])]
        if len(names) == 2:
            return f"the segments {names[0]} and {names[1]} are congruent"
        return f"the segments {_join(names)} are congruent"
    return t.kind
