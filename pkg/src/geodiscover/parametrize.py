"""Exact rational parametrization of branch-free constructions.

Whenever a construction contains no two-valued intersection, every point is a
rational function of the free coordinates, the semi-free parameters, and (for
regular-polygon steps) sqrt(3).  Points are carried in projective form
(X, Y, W) with polynomial entries over those parameters; a statement is then
generally true iff its cross-multiplied thesis is the zero polynomial (with
sqrt(3) folded via s^2 -> 3, vanishing means vanishing on both sign
branches).  This decides every statement over such constructions exactly,
without a basis computation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import statements as st
from .construction import (
    CircleRef,
    Construction,
    FootOfPerpendicular,
    FreePoint,
    IntersectCircles,
    IntersectLineCircle,
    IntersectLines,
    LineRef,
    Midpoint,
    NamedCircle,
    PointOnCircle,
    PointOnLine,
    RegularPolygonVertex,
    polygon_matrix,
    step_output,
)
from .polynomial import Polynomial

Triple = Tuple[Polynomial, Polynomial, Polynomial]


class Parametrization:
    def __init__(self, nvars: int, sqrt_var: Optional[int], names: List[str]):
        self.nvars = nvars
        self.sqrt_var = sqrt_var
        self.var_names = names
        self.points: Dict[str, Triple] = {}

    def fold(self, p: Polynomial) -> Polynomial:
        if self.sqrt_var is not None and p.degree_in(self.sqrt_var) >= 2:
            p = p.reduce_square(self.sqrt_var, 3)
        return p

    def normalize(self, t: Triple) -> Triple:
        """Joint integer-primitive form of a projective point (common scale)."""
        x, y, w = (self.fold(p) for p in t)
        den = 1
        for poly in (x, y, w):
            for c in poly.terms.values():
                d = Fraction(c).denominator
                den = den * d // gcd(den, d)
        g = 0
        for poly in (x, y, w):
            for c in poly.terms.values():
                g = gcd(g, abs(int(Fraction(c) * den)))
        if den == 1 and g in (0, 1):
            return (x, y, w)
        factor = Fraction(den, g or 1)
        out = []
        for poly in (x, y, w):
            out.append(
                Polynomial(
                    poly.nvars,
                    {e: int(Fraction(c) * factor) for e, c in poly.terms.items()},
                )
            )
        return tuple(out)


def _cross(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> Tuple[Polynomial, Polynomial, Polynomial]:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _line_of(param: Parametrization, ref: LineRef) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """Projective line coordinates (a, b, c) for a line reference."""
    p, q = param.points[ref.a], param.points[ref.b]
    if ref.kind == "through":
        return _cross(p, q)
    # direction of the base segment
    dx = q[0] * p[2] - p[0] * q[2]
    dy = q[1] * p[2] - p[1] * q[2]
    if ref.kind == "parallel":
        through = param.points[ref.through]
        return _cross(through, (dx, dy, Polynomial.zero(param.nvars)))
    if ref.kind == "perpendicular":
        through = param.points[ref.through]
        # perpendicular direction is the base line's normal (-dy, dx)
        neg_dy = Polynomial.zero(param.nvars) - dy
        return _cross(through, (neg_dy, dx, Polynomial.zero(param.nvars)))
    # perp_bisector: 2(q-p).X + (|p|^2 - |q|^2) = 0, homogenized
    xp, yp, wp = p
    xq, yq, wq = q
    a = (xq * wq * wp * wp - xp * wp * wq * wq).scale(2)
    b = (yq * wq * wp * wp - yp * wp * wq * wq).scale(2)
    c = (xp * xp + yp * yp) * (wq * wq) - (xq * xq + yq * yq) * (wp * wp)
    return (a, b, c)


def _circumcenter(param: Parametrization, a: str, b: str, c: str) -> Triple:
    l1 = _line_of(param, LineRef("perp_bisector", a, b))
    l2 = _line_of(param, LineRef("perp_bisector", a, c))
    return param.normalize(_cross(l1, l2))


def _circle_center_radius_point(param: Parametrization, ref: CircleRef) -> Tuple[Triple, Triple]:
    if ref.kind == "center_point":
        return param.points[ref.points[0]], param.points[ref.points[1]]
    center = _circumcenter(param, *ref.points)
    return center, param.points[ref.points[0]]


def build_parametrization(
    construction: Construction, closure: Sequence[str], pin: bool = False
) -> Optional[Parametrization]:
    """Projective rational coordinates for each point of the closure, or None
    when the closure contains a two-valued intersection step.

    With ``pin`` the first two free points sit at (0,0) and (1,0); sound for
    the similarity-invariant statement kinds this engine handles.
    """
    keep = set(closure)
    steps = [
        s
        for s in construction.steps
        if step_output(s) is not None and step_output(s) in keep
    ]
    for s in steps:
        if isinstance(s, (IntersectLineCircle, IntersectCircles)):
            return None

    pinned: Dict[str, Tuple[int, int]] = {}
    if pin:
        anchors = [(0, 0), (1, 0)]
        for s in steps:
            if isinstance(s, FreePoint) and anchors:
                pinned[s.name] = anchors.pop(0)

    names: List[str] = []
    for s in steps:
        if isinstance(s, FreePoint):
            if s.name not in pinned:
                names.extend((f"x_{s.name}", f"y_{s.name}"))
        elif isinstance(s, (PointOnLine, PointOnCircle)):
            names.append(f"t_{s.name}")
    needs_sqrt = any(
        isinstance(s, RegularPolygonVertex)
        and any(e.b != 0 for e in polygon_matrix(s.n, s.k))
        for s in steps
    )
    sqrt_var = None
    if needs_sqrt:
        sqrt_var = len(names)
        names.append("sqrt3")
    nvars = len(names)
    param = Parametrization(nvars, sqrt_var, names)

    var_iter = iter(range(nvars))

    def var() -> Polynomial:
        return Polynomial.variable(next(var_iter), nvars)

    one = Polynomial.constant(1, nvars)
    zero = Polynomial.zero(nvars)

    for s in steps:
        if isinstance(s, FreePoint):
            if s.name in pinned:
                px, py = pinned[s.name]
                param.points[s.name] = (
                    Polynomial.constant(px, nvars),
                    Polynomial.constant(py, nvars),
                    one,
                )
            else:
                param.points[s.name] = (var(), var(), one)
        elif isinstance(s, Midpoint):
            xa, ya, wa = param.points[s.a]
            xb, yb, wb = param.points[s.b]
            param.points[s.name] = param.normalize(
                (xa * wb + xb * wa, ya * wb + yb * wa, (wa * wb).scale(2))
            )
        elif isinstance(s, IntersectLines):
            l1 = _line_of(param, s.l1)
            l2 = _line_of(param, s.l2)
            param.points[s.name] = param.normalize(_cross(l1, l2))
        elif isinstance(s, FootOfPerpendicular):
            base = _line_of(param, LineRef("through", s.a, s.b))
            perp = _line_of(param, LineRef("perpendicular", s.a, s.b, through=s.point))
            param.points[s.name] = param.normalize(_cross(base, perp))
        elif isinstance(s, PointOnLine):
            t = var()
            xa, ya, wa = param.points[s.a]
            xb, yb, wb = param.points[s.b]
            param.points[s.name] = param.normalize(
                (
                    xa * wb + t * (xb * wa - xa * wb),
                    ya * wb + t * (yb * wa - ya * wb),
                    wa * wb,
                )
            )
        elif isinstance(s, PointOnCircle):
            t = var()
            center, rad = _circle_center_radius_point(param, s.circle)
            xo, yo, wo = center
            xr, yr, wr = rad
            den = one + t * t
            vx = xr * wo - xo * wr
            vy = yr * wo - yo * wr
            cos_num = one - t * t
            sin_num = t.scale(2)
            param.points[s.name] = param.normalize(
                (
                    xo * wr * den + cos_num * vx - sin_num * vy,
                    yo * wr * den + sin_num * vx + cos_num * vy,
                    wo * wr * den,
                )
            )
        elif isinstance(s, RegularPolygonVertex):
            m00, m01, m10, m11 = polygon_matrix(s.n, s.k)

            def coeff(q) -> Polynomial:
                out = Polynomial.constant(q.a, nvars)
                if q.b:
                    out = out + Polynomial.variable(sqrt_var, nvars).scale(q.b)
                return out

            xa, ya, wa = param.points[s.a]
            xb, yb, wb = param.points[s.b]
            vx = xb * wa - xa * wb
            vy = yb * wa - ya * wb
            # clear the half-integer rotation entries with a factor of 2
            x = (xa * wb).scale(2) + (coeff(m00) * vx + coeff(m01) * vy).scale(2)
            y = (ya * wb).scale(2) + (coeff(m10) * vx + coeff(m11) * vy).scale(2)
            w = (wa * wb).scale(2)
            param.points[s.name] = param.normalize((x, y, w))
        else:
            return None
    return param


# ---------------------------------------------------------------------------
# statement decision over a parametrization
# ---------------------------------------------------------------------------


def _theses_over(param: Parametrization, stmt: st.Statement) -> List[Polynomial]:
    pts = param.points
    zero = Polynomial.zero(param.nvars)

    def direction(a: str, b: str) -> Tuple[Polynomial, Polynomial]:
        xa, ya, wa = pts[a]
        xb, yb, wb = pts[b]
        return (xb * wa - xa * wb, yb * wa - ya * wb)

    if stmt.kind == st.IDENTITY:
        p, q = stmt.points
        xp, yp, wp = pts[p]
        xq, yq, wq = pts[q]
        return [xp * wq - xq * wp, yp * wq - yq * wp]
    if stmt.kind == st.COLLINEAR:
        a, b, c = (pts[p] for p in stmt.points)
        return [
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        ]
    if stmt.kind == st.CONCYCLIC:
        rows = []
        for p in stmt.points:
            x, y, w = pts[p]
            rows.append((x * x + y * y, x * w, y * w, w * w))

        def det3(r):
            return (
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            )

        # cofactor expansion along the fourth column (entries W_i^2)
        total = zero
        sign = -1
        for i in range(4):
            minor = [(rows[j][0], rows[j][1], rows[j][2]) for j in range(4) if j != i]
            term = rows[i][3] * det3(minor)
            total = total - term if sign < 0 else total + term
            sign = -sign
        return [total]
    if stmt.kind == st.PARALLEL:
        (a, b), (c, d) = stmt.lines[0][:2], stmt.lines[1][:2]
        d1, d2 = direction(a, b), direction(c, d)
        return [d1[0] * d2[1] - d1[1] * d2[0]]
    if stmt.kind == st.PERPENDICULAR:
        (a, b), (c, d) = stmt.lines[0][:2], stmt.lines[1][:2]
        d1, d2 = direction(a, b), direction(c, d)
        return [d1[0] * d2[0] + d1[1] * d2[1]]
    if stmt.kind == st.CONGRUENT:
        (a, b), (c, d) = stmt.segments
        d1, d2 = direction(a, b), direction(c, d)
        wa, wb = pts[a][2], pts[b][2]
        wc, wd = pts[c][2], pts[d][2]
        lhs = (d1[0] * d1[0] + d1[1] * d1[1]) * (wc * wc) * (wd * wd)
        rhs = (d2[0] * d2[0] + d2[1] * d2[1]) * (wa * wa) * (wb * wb)
        return [lhs - rhs]
    raise ValueError(stmt.kind)


def statement_vanishes(param: Parametrization, stmt: st.Statement) -> bool:
    """Exact decision: the thesis is identically zero over the parameters."""
    for thesis in _theses_over(param, stmt):
        if not param.fold(thesis).is_zero():
            return False
    return True
