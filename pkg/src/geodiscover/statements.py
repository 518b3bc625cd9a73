"""Candidate relations over geometric points."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Tuple

IDENTITY = "identity"
COLLINEAR = "collinear"
CONCYCLIC = "concyclic"
PARALLEL = "parallel"
PERPENDICULAR = "perpendicular"
CONGRUENT = "congruent"

KINDS = (IDENTITY, COLLINEAR, CONCYCLIC, PARALLEL, PERPENDICULAR, CONGRUENT)

CONJECTURE = "conjecture"
THEOREM = "theorem"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class Statement:
    """One candidate relation.

    ``points`` carries identity/collinearity/concyclicity operands, ``lines``
    holds point-tuples naming lines for parallel/perpendicular, ``segments``
    holds point pairs for congruence.
    """

    kind: str
    points: Tuple[str, ...] = ()
    lines: Tuple[Tuple[str, ...], ...] = ()
    segments: Tuple[Tuple[str, str], ...] = ()
    provenance: str = CONJECTURE

    def involved_points(self) -> Tuple[str, ...]:
        out = list(self.points)
        for line in self.lines:
            out.extend(line)
        for seg in self.segments:
            out.extend(seg)
        seen = []
        for p in out:
            if p not in seen:
                seen.append(p)
        return tuple(seen)

    def canonical(self) -> "Statement":
        """Order-normalized form used for deduplication and caching."""
        if self.kind in (IDENTITY, COLLINEAR, CONCYCLIC):
            return replace(self, points=tuple(sorted(self.points)))
        if self.kind in (PARALLEL, PERPENDICULAR):
            lines = tuple(sorted(tuple(sorted(l)) for l in self.lines))
            return replace(self, points=(), lines=lines)
        if self.kind == CONGRUENT:
            segs = tuple(sorted(tuple(sorted(s)) for s in self.segments))
            return replace(self, points=(), segments=segs)
        return self

    def key(self):
        c = self.canonical()
        return (c.kind, c.points, c.lines, c.segments)

    def with_provenance(self, provenance: str) -> "Statement":
        return replace(self, provenance=provenance)


def identity(p: str, q: str) -> Statement:
    return Statement(IDENTITY, points=(p, q))


def collinear(*pts: str) -> Statement:
    return Statement(COLLINEAR, points=tuple(pts))


def concyclic(*pts: str) -> Statement:
    return Statement(CONCYCLIC, points=tuple(pts))


def parallel(l1: Tuple[str, ...], l2: Tuple[str, ...]) -> Statement:
    return Statement(PARALLEL, lines=(tuple(l1), tuple(l2)))


def perpendicular(l1: Tuple[str, ...], l2: Tuple[str, ...]) -> Statement:
    return Statement(PERPENDICULAR, lines=(tuple(l1), tuple(l2)))


def congruent(s1: Tuple[str, str], s2: Tuple[str, str]) -> Statement:
    return Statement(CONGRUENT, segments=(tuple(s1), tuple(s2)))
