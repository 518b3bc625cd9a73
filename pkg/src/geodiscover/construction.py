"""Geometric constructions as ordered sequences of typed steps.

A construction owns its points.  Lines and circles are not stored objects:
a line is referenced by two defining points (optionally with a parallel /
perpendicular modifier through a third point), a circle by center+point or by
three points.  Every step that admits it is evaluated both in floating point
and exactly; exact evaluation works in Q(sqrt(3)) and fails only for
two-valued intersections (line/circle and circle/circle), whose branches need
a square root of an arbitrary discriminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .errors import (
    DegenerateInstanceError,
    DegenerateStepError,
    UnknownReferenceError,
    UnsupportedStepError,
)
from .exact import QuadExt

FREE = "free"
SEMI_FREE = "semi-free"
DEPENDENT = "dependent"


# ---------------------------------------------------------------------------
# references and steps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineRef:
    """A line named by points: through(a,b), parallel/perpendicular to (a,b)
    through a third point, or the perpendicular bisector of (a,b)."""

    kind: str  # "through" | "parallel" | "perpendicular" | "perp_bisector"
    a: str
    b: str
    through: Optional[str] = None

    def points(self) -> Tuple[str, ...]:
        if self.through is not None:
            return (self.a, self.b, self.through)
        return (self.a, self.b)


@dataclass(frozen=True)
class CircleRef:
    kind: str  # "center_point" | "through3"
    points: Tuple[str, ...]  # (O, A) or (A, B, C)


@dataclass(frozen=True)
class FreePoint:
    name: str
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class Midpoint:
    name: str
    a: str
    b: str


@dataclass(frozen=True)
class IntersectLines:
    name: str
    l1: LineRef
    l2: LineRef


@dataclass(frozen=True)
class IntersectLineCircle:
    name: str
    line: LineRef
    circle: CircleRef
    hint: Tuple[float, float]


@dataclass(frozen=True)
class IntersectCircles:
    name: str
    c1: CircleRef
    c2: CircleRef
    hint: Tuple[float, float]


@dataclass(frozen=True)
class FootOfPerpendicular:
    name: str
    point: str
    a: str
    b: str


@dataclass(frozen=True)
class PointOnLine:
    """Semi-free: P = A + t*(B-A) with one rational degree of freedom."""

    name: str
    a: str
    b: str
    t: Fraction


@dataclass(frozen=True)
class PointOnCircle:
    """Semi-free point on a circle via the rational rotation with parameter t:
    P = O + R(t)*(A - O), R(t) = [[1-t^2, -2t], [2t, 1-t^2]] / (1+t^2)."""

    name: str
    circle: CircleRef
    t: Fraction


@dataclass(frozen=True)
class RegularPolygonVertex:
    """Vertex k (0-based; a is 0, b is 1) of the regular n-gon on edge a->b."""

    name: str
    a: str
    b: str
    n: int
    k: int


@dataclass(frozen=True)
class NamedCircle:
    """Binds a name to a circle reference; produces no point."""

    name: str
    circle: CircleRef


Step = Union[
    FreePoint,
    Midpoint,
    IntersectLines,
    IntersectLineCircle,
    IntersectCircles,
    FootOfPerpendicular,
    PointOnLine,
    PointOnCircle,
    RegularPolygonVertex,
    NamedCircle,
]

SUPPORTED_POLYGONS = (3, 4, 6, 12)


@dataclass(frozen=True)
class TrivialFact:
    """An incidence fact directly implied by one step's definition."""

    kind: str  # "collinear" | "concyclic"
    points: Tuple[str, ...]
    source: int


@dataclass(frozen=True)
class TrivialDirectionFact:
    """A by-construction parallel/perpendicular relation between point-pair lines."""

    rel: str  # "parallel" | "perpendicular"
    line1: Tuple[str, str]
    line2: Tuple[str, str]
    source: int


# ---------------------------------------------------------------------------
# rotation matrices for regular polygons (exact in Q(sqrt(3)))
# ---------------------------------------------------------------------------

_ROTATIONS: Dict[int, Tuple[QuadExt, QuadExt]] = {
    3: (QuadExt(Fraction(-1, 2)), QuadExt(0, Fraction(1, 2))),
    4: (QuadExt(0), QuadExt(1)),
    6: (QuadExt(Fraction(1, 2)), QuadExt(0, Fraction(1, 2))),
    12: (QuadExt(0, Fraction(1, 2)), QuadExt(Fraction(1, 2))),
}

_MATRIX_CACHE: Dict[Tuple[int, int], Tuple[QuadExt, QuadExt, QuadExt, QuadExt]] = {}


def polygon_matrix(n: int, k: int) -> Tuple[QuadExt, QuadExt, QuadExt, QuadExt]:
    """Entries (m00, m01, m10, m11) of sum_{j<k} R(2*pi/n)^j, so that
    V_k = A + M*(B-A)."""
    if n not in _ROTATIONS:
        raise UnsupportedStepError(f"regular polygon with n={n} is not supported")
    key = (n, k)
    if key in _MATRIX_CACHE:
        return _MATRIX_CACHE[key]
    c, s = _ROTATIONS[n]
    # accumulate powers of the rotation matrix
    r00, r01, r10, r11 = QuadExt(1), QuadExt(0), QuadExt(0), QuadExt(1)
    m00, m01, m10, m11 = QuadExt(0), QuadExt(0), QuadExt(0), QuadExt(0)
    for _ in range(k):
        m00, m01, m10, m11 = m00 + r00, m01 + r01, m10 + r10, m11 + r11
        r00, r01, r10, r11 = (
            c * r00 - s * r10,
            c * r01 - s * r11,
            s * r00 + c * r10,
            s * r01 + c * r11,
        )
    _MATRIX_CACHE[key] = (m00, m01, m10, m11)
    return _MATRIX_CACHE[key]


# ---------------------------------------------------------------------------
# evaluation helpers, generic over float / QuadExt coordinates
# ---------------------------------------------------------------------------


class _ExactUnsupported(Exception):
    pass


_EPS = 1e-12


def _is_zero(v, exact: bool, scale: float = 1.0) -> bool:
    if exact:
        return v == 0 or (isinstance(v, QuadExt) and v.is_zero())
    return abs(v) <= _EPS * max(1.0, scale)


def _line_point_dir(ref: LineRef, pt, exact: bool):
    a, b = pt(ref.a), pt(ref.b)
    dx, dy = b[0] - a[0], b[1] - a[1]
    scale = 1.0 if exact else abs(dx) + abs(dy)
    if _is_zero(dx, exact, scale) and _is_zero(dy, exact, scale):
        raise DegenerateInstanceError(f"line through coincident points {ref.a}, {ref.b}")
    if ref.kind == "through":
        return a, (dx, dy)
    if ref.kind == "parallel":
        return pt(ref.through), (dx, dy)
    if ref.kind == "perpendicular":
        return pt(ref.through), (-dy, dx)
    if ref.kind == "perp_bisector":
        two = Fraction(2) if exact else 2.0
        mid = ((a[0] + b[0]) / two, (a[1] + b[1]) / two)
        return mid, (-dy, dx)
    raise UnsupportedStepError(f"unknown line kind {ref.kind}")


def _circle_center_r2(ref: CircleRef, pt, exact: bool):
    """Returns (center, radius^2, radius_point)."""
    if ref.kind == "center_point":
        o, a = pt(ref.points[0]), pt(ref.points[1])
        dx, dy = a[0] - o[0], a[1] - o[1]
        r2 = dx * dx + dy * dy
        if _is_zero(r2, exact, float(abs(r2)) if not exact else 1.0):
            raise DegenerateInstanceError("circle through its own center")
        return o, r2, a
    if ref.kind == "through3":
        a, b, c = (pt(n) for n in ref.points)
        # circumcenter from the two chord bisector equations
        abx, aby = b[0] - a[0], b[1] - a[1]
        acx, acy = c[0] - a[0], c[1] - a[1]
        den = 2 * (abx * acy - aby * acx)
        scale = 1.0 if exact else (abs(abx) + abs(aby)) * (abs(acx) + abs(acy))
        if _is_zero(den, exact, scale):
            raise DegenerateInstanceError("circle through collinear points")
        nb = abx * abx + aby * aby
        nc = acx * acx + acy * acy
        ux = (acy * nb - aby * nc) / den
        uy = (abx * nc - acx * nb) / den
        center = (a[0] + ux, a[1] + uy)
        return center, ux * ux + uy * uy, a
    raise UnsupportedStepError(f"unknown circle kind {ref.kind}")


def _intersect_line_line(p1, d1, p2, d2, exact: bool):
    den = d1[0] * d2[1] - d1[1] * d2[0]
    scale = 1.0 if exact else (abs(d1[0]) + abs(d1[1])) * (abs(d2[0]) + abs(d2[1]))
    if _is_zero(den, exact, scale):
        raise DegenerateInstanceError("parallel lines do not intersect")
    wx, wy = p2[0] - p1[0], p2[1] - p1[1]
    t = (wx * d2[1] - wy * d2[0]) / den
    return (p1[0] + t * d1[0], p1[1] + t * d1[1])


def _intersect_line_circle(p0, d, center, r2, hint, exact: bool):
    if exact:
        raise _ExactUnsupported()
    fx, fy = p0[0] - center[0], p0[1] - center[1]
    a = d[0] * d[0] + d[1] * d[1]
    b = 2 * (fx * d[0] + fy * d[1])
    c = fx * fx + fy * fy - r2
    disc = b * b - 4 * a * c
    if disc < 0 or a <= 0:
        raise DegenerateInstanceError("line misses the circle")
    sq = math.sqrt(disc)
    cands = [
        (p0[0] + t * d[0], p0[1] + t * d[1])
        for t in ((-b + sq) / (2 * a), (-b - sq) / (2 * a))
    ]
    return min(cands, key=lambda q: (q[0] - hint[0]) ** 2 + (q[1] - hint[1]) ** 2)


def _rational_rotation(t, o, a):
    one = 1 if isinstance(t, Fraction) else 1.0
    den = one + t * t
    cos_t = (one - t * t) / den
    sin_t = (t + t) / den
    vx, vy = a[0] - o[0], a[1] - o[1]
    return (o[0] + cos_t * vx - sin_t * vy, o[1] + sin_t * vx + cos_t * vy)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def step_output(step: Step) -> Optional[str]:
    if isinstance(step, NamedCircle):
        return None
    return step.name


def step_dependencies(step: Step) -> Tuple[str, ...]:
    if isinstance(step, FreePoint):
        return ()
    if isinstance(step, Midpoint):
        return (step.a, step.b)
    if isinstance(step, IntersectLines):
        return step.l1.points() + step.l2.points()
    if isinstance(step, IntersectLineCircle):
        return step.line.points() + step.circle.points
    if isinstance(step, IntersectCircles):
        return step.c1.points + step.c2.points
    if isinstance(step, FootOfPerpendicular):
        return (step.point, step.a, step.b)
    if isinstance(step, PointOnLine):
        return (step.a, step.b)
    if isinstance(step, PointOnCircle):
        return step.circle.points
    if isinstance(step, RegularPolygonVertex):
        return (step.a, step.b)
    if isinstance(step, NamedCircle):
        return step.circle.points
    raise UnsupportedStepError(str(step))


def point_kind(step: Step) -> str:
    if isinstance(step, FreePoint):
        return FREE
    if isinstance(step, (PointOnLine, PointOnCircle)):
        return SEMI_FREE
    return DEPENDENT


class Construction:
    """Immutable ordered DAG of construction steps."""

    def __init__(self, steps: Sequence[Step] = (), hidden: Iterable[str] = ()):
        self.steps: Tuple[Step, ...] = tuple(steps)
        self.hidden: frozenset = frozenset(hidden)
        self._index: Dict[str, int] = {}
        self.circles: Dict[str, CircleRef] = {}
        for i, step in enumerate(self.steps):
            out = step_output(step)
            if out is not None:
                self._index[out] = i
            if isinstance(step, NamedCircle):
                self.circles[step.name] = step.circle
        self._coords: Optional[Dict[str, Tuple[float, float]]] = None
        self._exact: Optional[Dict[str, Tuple[QuadExt, QuadExt]]] = None
        self._exact_failed = False

    # -- introspection ------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Construction)
            and self.steps == other.steps
            and self.hidden == other.hidden
        )

    def point_names(self) -> List[str]:
        return [step_output(s) for s in self.steps if step_output(s) is not None]

    def visible_points(self) -> List[str]:
        return [p for p in self.point_names() if p not in self.hidden]

    def has_point(self, name: str) -> bool:
        return name in self._index

    def step_of(self, name: str) -> Step:
        return self.steps[self._index[name]]

    def kind_of(self, name: str) -> str:
        return point_kind(self.step_of(name))

    def free_points(self) -> List[str]:
        return [p for p in self.point_names() if self.kind_of(p) == FREE]

    def semi_free_points(self) -> List[str]:
        return [p for p in self.point_names() if self.kind_of(p) == SEMI_FREE]

    def ancestors(self, names: Iterable[str]) -> Set[str]:
        """Transitive closure of step dependencies, including the inputs."""
        out: Set[str] = set()
        stack = list(names)
        while stack:
            name = stack.pop()
            if name in out:
                continue
            out.add(name)
            stack.extend(step_dependencies(self.step_of(name)))
        return out

    def with_hidden(self, hidden: Iterable[str]) -> "Construction":
        return Construction(self.steps, set(self.hidden) | set(hidden))

    # -- building -----------------------------------------------------------

    def _validate(self, step: Step):
        for dep in step_dependencies(step):
            if dep not in self._index:
                raise UnknownReferenceError(f"unknown point '{dep}'")
        out = step_output(step)
        if out is not None and (out in self._index or out in self.circles):
            raise UnknownReferenceError(f"duplicate id '{out}'")
        if isinstance(step, NamedCircle) and (
            step.name in self.circles or step.name in self._index
        ):
            raise UnknownReferenceError(f"duplicate id '{step.name}'")
        if isinstance(step, RegularPolygonVertex) and step.n not in SUPPORTED_POLYGONS:
            raise UnsupportedStepError(
                f"regular polygon with n={step.n} (supported: {SUPPORTED_POLYGONS})"
            )

    # -- evaluation -----------------------------------------------------------

    def _evaluate(
        self,
        free_overrides: Optional[Dict[str, Tuple]] = None,
        param_overrides: Optional[Dict[str, object]] = None,
        exact: bool = False,
    ) -> Dict[str, Tuple]:
        coords: Dict[str, Tuple] = {}
        free_overrides = free_overrides or {}
        param_overrides = param_overrides or {}

        def pt(name: str):
            return coords[name]

        for step in self.steps:
            if isinstance(step, NamedCircle):
                continue
            name = step.name
            if isinstance(step, FreePoint):
                if name in free_overrides:
                    x, y = free_overrides[name]
                elif exact:
                    x, y = step.x, step.y
                else:
                    x, y = float(step.x), float(step.y)
                coords[name] = (x, y) if exact else (float(x), float(y))
            elif isinstance(step, Midpoint):
                a, b = pt(step.a), pt(step.b)
                two = Fraction(2) if exact else 2.0
                coords[name] = ((a[0] + b[0]) / two, (a[1] + b[1]) / two)
            elif isinstance(step, IntersectLines):
                p1, d1 = _line_point_dir(step.l1, pt, exact)
                p2, d2 = _line_point_dir(step.l2, pt, exact)
                coords[name] = _intersect_line_line(p1, d1, p2, d2, exact)
            elif isinstance(step, IntersectLineCircle):
                if exact:
                    raise _ExactUnsupported()
                p0, d = _line_point_dir(step.line, pt, exact)
                center, r2, _ = _circle_center_r2(step.circle, pt, exact)
                coords[name] = _intersect_line_circle(p0, d, center, r2, step.hint, exact)
            elif isinstance(step, IntersectCircles):
                if exact:
                    raise _ExactUnsupported()
                o1, r1, _ = _circle_center_r2(step.c1, pt, exact)
                o2, r2, _ = _circle_center_r2(step.c2, pt, exact)
                # radical line, then line/circle intersection
                dx, dy = o2[0] - o1[0], o2[1] - o1[1]
                if _is_zero(dx, exact, abs(dx) + abs(dy)) and _is_zero(dy, exact, abs(dx) + abs(dy)):
                    raise DegenerateInstanceError("concentric circles")
                rhs = (o2[0] ** 2 + o2[1] ** 2 - o1[0] ** 2 - o1[1] ** 2 - (r2 - r1)) / 2.0
                # point on the radical line closest to o1
                n2 = dx * dx + dy * dy
                t = (rhs - (o1[0] * dx + o1[1] * dy)) / n2
                p0 = (o1[0] + t * dx, o1[1] + t * dy)
                coords[name] = _intersect_line_circle(p0, (-dy, dx), o1, r1, step.hint, exact)
            elif isinstance(step, FootOfPerpendicular):
                p, a, b = pt(step.point), pt(step.a), pt(step.b)
                dx, dy = b[0] - a[0], b[1] - a[1]
                n2 = dx * dx + dy * dy
                if _is_zero(n2, exact, float(abs(n2)) if not exact else 1.0):
                    raise DegenerateInstanceError("foot on a degenerate line")
                t = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / n2
                coords[name] = (a[0] + t * dx, a[1] + t * dy)
            elif isinstance(step, PointOnLine):
                a, b = pt(step.a), pt(step.b)
                t = param_overrides.get(name, step.t)
                if not exact:
                    t = float(t)
                elif not isinstance(t, (int, Fraction)):
                    raise _ExactUnsupported()
                coords[name] = (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
            elif isinstance(step, PointOnCircle):
                center, _, rad_pt = _circle_center_r2(step.circle, pt, exact)
                t = param_overrides.get(name, step.t)
                if not exact:
                    t = float(t)
                elif not isinstance(t, (int, Fraction)):
                    raise _ExactUnsupported()
                coords[name] = _rational_rotation(t, center, rad_pt)
            elif isinstance(step, RegularPolygonVertex):
                a, b = pt(step.a), pt(step.b)
                m00, m01, m10, m11 = polygon_matrix(step.n, step.k)
                if not exact:
                    m00, m01, m10, m11 = (float(m00), float(m01), float(m10), float(m11))
                vx, vy = b[0] - a[0], b[1] - a[1]
                coords[name] = (a[0] + m00 * vx + m01 * vy, a[1] + m10 * vx + m11 * vy)
            else:
                raise UnsupportedStepError(str(step))
            if not exact:
                x, y = coords[name]
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise DegenerateInstanceError(f"non-finite coordinates for {name}")
        return coords

    @property
    def coords(self) -> Dict[str, Tuple[float, float]]:
        if self._coords is None:
            self._coords = self._evaluate()
        return self._coords

    def exact_coords(self) -> Optional[Dict[str, Tuple[QuadExt, QuadExt]]]:
        """Exact coordinates in Q(sqrt(3)), or None when the construction
        contains a two-valued intersection step."""
        if self._exact_failed:
            return None
        if self._exact is None:
            try:
                raw = self._evaluate(exact=True)
            except _ExactUnsupported:
                self._exact_failed = True
                return None
            self._exact = {
                k: (QuadExt.coerce(x), QuadExt.coerce(y)) for k, (x, y) in raw.items()
            }
        return self._exact

    @property
    def exactly_computable(self) -> bool:
        return self.exact_coords() is not None

    def sample_exact(
        self,
        free_values: Dict[str, Tuple[Fraction, Fraction]],
        params: Optional[Dict[str, Fraction]] = None,
    ) -> Optional[Dict[str, Tuple[QuadExt, QuadExt]]]:
        """Exact instance at the given free coordinates; None when degenerate."""
        try:
            raw = self._evaluate(free_overrides=free_values, param_overrides=params or {}, exact=True)
        except _ExactUnsupported:
            return None
        except (DegenerateInstanceError, ZeroDivisionError):
            return None
        return {k: (QuadExt.coerce(x), QuadExt.coerce(y)) for k, (x, y) in raw.items()}

    # -- trivial facts -----------------------------------------------------------

    def trivial_facts(self) -> Tuple[List[TrivialFact], List[TrivialDirectionFact]]:
        incidences: List[TrivialFact] = []
        directions: List[TrivialDirectionFact] = []

        def line_facts(ref: LineRef, p: str, i: int):
            if ref.kind == "through":
                incidences.append(TrivialFact("collinear", (ref.a, ref.b, p), i))
            elif ref.kind == "parallel":
                directions.append(
                    TrivialDirectionFact("parallel", (ref.through, p), (ref.a, ref.b), i)
                )
            elif ref.kind == "perpendicular":
                directions.append(
                    TrivialDirectionFact("perpendicular", (ref.through, p), (ref.a, ref.b), i)
                )
            # perp_bisector: the new point alone does not name the line

        def circle_facts(ref: CircleRef, p: str, i: int):
            if ref.kind == "through3":
                incidences.append(TrivialFact("concyclic", ref.points + (p,), i))
            # center_point incidence is metric (|OP| = |OA|), never seeded

        for i, step in enumerate(self.steps):
            if isinstance(step, Midpoint):
                incidences.append(TrivialFact("collinear", (step.a, step.b, step.name), i))
            elif isinstance(step, IntersectLines):
                line_facts(step.l1, step.name, i)
                line_facts(step.l2, step.name, i)
            elif isinstance(step, IntersectLineCircle):
                line_facts(step.line, step.name, i)
                circle_facts(step.circle, step.name, i)
            elif isinstance(step, IntersectCircles):
                circle_facts(step.c1, step.name, i)
                circle_facts(step.c2, step.name, i)
            elif isinstance(step, FootOfPerpendicular):
                incidences.append(TrivialFact("collinear", (step.a, step.b, step.name), i))
                directions.append(
                    TrivialDirectionFact(
                        "perpendicular", (step.point, step.name), (step.a, step.b), i
                    )
                )
            elif isinstance(step, PointOnLine):
                incidences.append(TrivialFact("collinear", (step.a, step.b, step.name), i))
            elif isinstance(step, PointOnCircle):
                circle_facts(step.circle, step.name, i)
        return incidences, directions


def apply_step(construction: Construction, step: Step) -> Construction:
    """Extend a construction by one step, checking references and evaluating
    the extended numeric instance (a step that cannot be drawn is rejected)."""
    construction._validate(step)
    extended = Construction(construction.steps + (step,), construction.hidden)
    try:
        extended.coords
    except DegenerateInstanceError as exc:
        raise DegenerateStepError(str(exc)) from exc
    return extended


def build(steps: Sequence[Step], hidden: Iterable[str] = ()) -> Construction:
    c = Construction()
    for step in steps:
        c = apply_step(c, step)
    return c.with_hidden(hidden) if hidden else c


def evaluate_numeric(
    construction: Construction, free_coords: Dict[str, Tuple[float, float]]
) -> Dict[str, Tuple[float, float]]:
    """Recompute all coordinates for new free-point positions.

    Branch hints resolve two-valued intersections by proximity; semi-free
    points keep their stored parameter, staying on their object.
    """
    for p in construction.free_points():
        if p not in free_coords:
            raise UnknownReferenceError(f"missing free coordinates for '{p}'")
    return construction._evaluate(free_overrides=dict(free_coords))
