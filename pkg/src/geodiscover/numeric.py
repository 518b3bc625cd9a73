"""Floating-point predicates and the resampling conjecture filter.

The predicates are scale-normalized determinant tests; a false result
suppresses a conjecture and is never treated as a proof of anything.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from . import statements as st
from .construction import Construction
from .errors import DegenerateInstanceError, NonFiniteError, ResampleExhaustedError

DEFAULT_TOL = 1e-8
DEFAULT_RESAMPLES = 4
DEFAULT_BOX = (-10.0, 10.0)

Point = Tuple[float, float]


def diameter(points: Sequence[Point]) -> float:
    pts = list(points)
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = math.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1])
            if d > best:
                best = d
    return best


def _check_finite(points: Sequence[Point]):
    for x, y in points:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise NonFiniteError("non-finite coordinate in numeric predicate")


def _det3(m) -> float:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def concyclic_det(points: Sequence[Point]) -> float:
    """det of rows (x^2+y^2, x, y, 1), expanded along the last column."""
    rows = [(x * x + y * y, x, y) for x, y in points]
    total = 0.0
    sign = -1.0
    for i in range(4):
        minor = [rows[j] for j in range(4) if j != i]
        total += sign * _det3(minor)
        sign = -sign
    return total


def numeric_predicate(
    kind: str, points: Sequence[Point], tol: float = DEFAULT_TOL, scale: Optional[float] = None
) -> bool:
    """Scale-invariant predicate on raw coordinates.

    ``scale`` should be the diameter of the whole figure; it defaults to the
    diameter of the given points (callers must supply it for identity, whose
    own diameter is the quantity under test).
    """
    _check_finite(points)
    if scale is None:
        scale = diameter(points)
    if kind == st.IDENTITY:
        (x1, y1), (x2, y2) = points
        return max(abs(x1 - x2), abs(y1 - y2)) <= tol * scale
    if kind == st.COLLINEAR:
        (x1, y1), (x2, y2), (x3, y3) = points
        det = (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)
        return abs(det) <= tol * scale * scale
    if kind == st.CONCYCLIC:
        return abs(concyclic_det(points)) <= tol * scale ** 4
    if kind == st.PARALLEL:
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = points
        cross = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3)
        return abs(cross) <= tol * scale * scale
    if kind == st.PERPENDICULAR:
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = points
        dot = (x2 - x1) * (x4 - x3) + (y2 - y1) * (y4 - y3)
        return abs(dot) <= tol * scale * scale
    if kind == st.CONGRUENT:
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = points
        d1 = (x2 - x1) ** 2 + (y2 - y1) ** 2
        d2 = (x4 - x3) ** 2 + (y4 - y3) ** 2
        return abs(d1 - d2) <= tol * scale * scale
    raise ValueError(f"unknown predicate kind '{kind}'")


def statement_points(stmt: st.Statement) -> Tuple[str, ...]:
    """The coordinate slots a statement's predicate consumes, in order."""
    if stmt.kind in (st.IDENTITY, st.COLLINEAR, st.CONCYCLIC):
        return stmt.points
    if stmt.kind in (st.PARALLEL, st.PERPENDICULAR):
        (a, b), (c, d) = stmt.lines[0][:2], stmt.lines[1][:2]
        return (a, b, c, d)
    (a, b), (c, d) = stmt.segments
    return (a, b, c, d)


def check_statement(
    stmt: st.Statement,
    coords: Dict[str, Point],
    tol: float = DEFAULT_TOL,
    scale: Optional[float] = None,
) -> bool:
    if scale is None:
        scale = diameter(list(coords.values()))
    pts = [coords[p] for p in statement_points(stmt)]
    return numeric_predicate(stmt.kind, pts, tol, scale)


def draw_instances(
    construction: Construction,
    k: int = DEFAULT_RESAMPLES,
    seed: int = 0,
    box: Tuple[float, float] = DEFAULT_BOX,
    max_draw_factor: int = 40,
) -> list:
    """The declared instance plus ``k`` seeded random re-instantiations.

    Free points are drawn uniformly in the box; semi-free points are
    perturbed along their object, not in the plane.  Degenerate draws are
    discarded and redrawn a bounded number of times.
    """
    if k < 1:
        raise ValueError("resample count must be >= 1")
    rng = random.Random(seed)
    free = construction.free_points()
    semi = construction.semi_free_points()
    instances = [construction.coords]
    budget = max_draw_factor * k
    draws_left = budget
    while len(instances) < k + 1:
        if draws_left <= 0:
            raise ResampleExhaustedError(
                f"could not draw {k} non-degenerate instances after {budget} tries"
            )
        draws_left -= 1
        frees = {p: (rng.uniform(*box), rng.uniform(*box)) for p in free}
        params = {p: float(construction.step_of(p).t) + rng.uniform(-1.0, 1.0) for p in semi}
        try:
            instances.append(
                construction._evaluate(free_overrides=frees, param_overrides=params)
            )
        except (DegenerateInstanceError, ZeroDivisionError, OverflowError):
            continue
    return instances


def resample_check(
    construction: Construction,
    stmt: st.Statement,
    k: int = DEFAULT_RESAMPLES,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    box: Tuple[float, float] = DEFAULT_BOX,
    max_draw_factor: int = 40,
) -> bool:
    """True iff the statement holds at the declared instance and at ``k``
    seeded random re-instantiations of the free points."""
    for coords in draw_instances(construction, k, seed, box, max_draw_factor):
        if not check_statement(stmt, coords, tol):
            return False
    return True


def random_exact_instance(construction: Construction, rng: random.Random, forced=None):
    """A random exact rational instance (free coords and semi-free params);
    None when the draw is degenerate.  ``forced`` pins chosen free points."""
    frees = {}
    for p in construction.free_points():
        frees[p] = (
            Fraction(rng.randint(-48, 48), rng.randint(1, 4)),
            Fraction(rng.randint(-48, 48), rng.randint(1, 4)),
        )
    if forced:
        for p, (x, y) in forced.items():
            frees[p] = (Fraction(x), Fraction(y))
    params = {
        p: Fraction(rng.randint(-40, 40), rng.randint(7, 13))
        for p in construction.semi_free_points()
    }
    return construction.sample_exact(frees, params)
