"""Translation of constructions and statements into polynomial form.

Every geometric point contributes two variables (pinned points excepted);
regular-polygon rotations contribute one shared auxiliary ``aux_1`` with the
defining relation aux_1^2 = 3.  Hypotheses vanish at every instance of the
construction; statement theses vanish exactly when the relation holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

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
from .errors import UnsupportedStatementError, UnsupportedStepError
from .exact import QuadExt
from .polynomial import Polynomial


@dataclass
class AlgebraicTranslation:
    construction: Construction
    points: List[str]
    var_names: List[str]
    nvars: int
    coord_polys: Dict[str, Tuple[Polynomial, Polynomial]]
    hypotheses: List[Polynomial]
    free_points: List[str]
    pinned: Dict[str, Tuple[Fraction, Fraction]]
    aux_index: Optional[int]

    def free_var_indices(self) -> Set[int]:
        out: Set[int] = set()
        for p in self.free_points:
            for poly in self.coord_polys[p]:
                out |= poly.variables_used()
        return out

    def sqrt_var_index(self) -> Optional[int]:
        return self.aux_index

    def instance_values(self, instance: Dict[str, Tuple[QuadExt, QuadExt]]) -> List:
        """Variable assignment matching an exact coordinate instance."""
        values: List = [QuadExt(0)] * self.nvars
        for p in self.points:
            if p in self.pinned:
                continue
            xp, yp = self.coord_polys[p]
            (xi,) = xp.variables_used()
            (yi,) = yp.variables_used()
            values[xi], values[yi] = instance[p]
        if self.aux_index is not None:
            values[self.aux_index] = QuadExt.sqrt3()
        return values

    def dump(self) -> str:
        lines = ["variables: " + " ".join(self.var_names), "hypotheses:"]
        for h in self.hypotheses:
            lines.append("  " + h.format(self.var_names))
        return "\n".join(lines) + "\n"


def _needs_aux(construction: Construction, points: Set[str]) -> bool:
    for step in construction.steps:
        out = step_output(step)
        if out is None or out not in points:
            continue
        if isinstance(step, RegularPolygonVertex):
            m = polygon_matrix(step.n, step.k)
            if any(entry.b != 0 for entry in m):
                return True
    return False


def algebraize_construction(
    construction: Construction,
    restrict_to: Optional[Iterable[str]] = None,
    pin: bool = False,
) -> AlgebraicTranslation:
    """Polynomial hypothesis system for (a dependency-closed part of) a
    construction.

    ``pin`` places the first two free points at (0,0) and (1,0); this is only
    sound for similarity-invariant statements, so it is off by default and
    disables the exact counterexample oracle upstream.
    """
    if restrict_to is None:
        points = list(construction.point_names())
        keep = set(points)
    else:
        keep = construction.ancestors(restrict_to)
        points = [p for p in construction.point_names() if p in keep]

    pinned: Dict[str, Tuple[Fraction, Fraction]] = {}
    if pin:
        anchors = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0))]
        for p in points:
            if not anchors:
                break
            if construction.kind_of(p) == "free":
                pinned[p] = anchors.pop(0)

    var_names: List[str] = []
    slots: Dict[str, Tuple[int, int]] = {}
    for p in points:
        if p in pinned:
            continue
        slots[p] = (len(var_names), len(var_names) + 1)
        var_names.append(f"x_{p}")
        var_names.append(f"y_{p}")
    aux_index = None
    if _needs_aux(construction, keep):
        aux_index = len(var_names)
        var_names.append("aux_1")
    nvars = len(var_names)

    coord_polys: Dict[str, Tuple[Polynomial, Polynomial]] = {}
    for p in points:
        if p in pinned:
            coord_polys[p] = (
                Polynomial.constant(pinned[p][0], nvars),
                Polynomial.constant(pinned[p][1], nvars),
            )
        else:
            xi, yi = slots[p]
            coord_polys[p] = (
                Polynomial.variable(xi, nvars),
                Polynomial.variable(yi, nvars),
            )

    def X(p: str) -> Polynomial:
        return coord_polys[p][0]

    def Y(p: str) -> Polynomial:
        return coord_polys[p][1]

    def const(c) -> Polynomial:
        return Polynomial.constant(c, nvars)

    def quad_coeff(q: QuadExt) -> Polynomial:
        # a + b*aux_1
        out = const(q.a)
        if q.b:
            out = out + Polynomial.variable(aux_index, nvars).scale(q.b)
        return out

    def collinear_poly(a: str, b: str, p: str) -> Polynomial:
        return (X(b) - X(a)) * (Y(p) - Y(a)) - (Y(b) - Y(a)) * (X(p) - X(a))

    def dist2(a: str, b: str) -> Polynomial:
        dx = X(b) - X(a)
        dy = Y(b) - Y(a)
        return dx * dx + dy * dy

    def on_line_poly(ref: LineRef, p: str) -> Polynomial:
        if ref.kind == "through":
            return collinear_poly(ref.a, ref.b, p)
        if ref.kind == "parallel":
            return (X(p) - X(ref.through)) * (Y(ref.b) - Y(ref.a)) - (
                Y(p) - Y(ref.through)
            ) * (X(ref.b) - X(ref.a))
        if ref.kind == "perpendicular":
            return (X(p) - X(ref.through)) * (X(ref.b) - X(ref.a)) + (
                Y(p) - Y(ref.through)
            ) * (Y(ref.b) - Y(ref.a))
        if ref.kind == "perp_bisector":
            return dist2(ref.a, p) - dist2(ref.b, p)
        raise UnsupportedStepError(f"line kind {ref.kind}")

    def concyclic_poly(names: Sequence[str]) -> Polynomial:
        rows = []
        for p in names:
            rows.append((X(p) * X(p) + Y(p) * Y(p), X(p), Y(p), const(1)))

        def det3(r):
            return (
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            )

        total = Polynomial.zero(nvars)
        sign = -1
        for i in range(4):
            minor = [
                (rows[j][0], rows[j][1], rows[j][2]) for j in range(4) if j != i
            ]
            term = det3(minor)
            total = total - term if sign < 0 else total + term
            sign = -sign
        return total

    def on_circle_poly(ref: CircleRef, p: str) -> Polynomial:
        if ref.kind == "center_point":
            o, a = ref.points
            return dist2(o, p) - dist2(o, a)
        return concyclic_poly(list(ref.points) + [p])

    hypotheses: List[Polynomial] = []
    for step in construction.steps:
        out = step_output(step)
        if out is None or out not in keep:
            continue
        if isinstance(step, FreePoint):
            continue
        if isinstance(step, Midpoint):
            hypotheses.append(X(out).scale(2) - X(step.a) - X(step.b))
            hypotheses.append(Y(out).scale(2) - Y(step.a) - Y(step.b))
        elif isinstance(step, IntersectLines):
            hypotheses.append(on_line_poly(step.l1, out))
            hypotheses.append(on_line_poly(step.l2, out))
        elif isinstance(step, IntersectLineCircle):
            hypotheses.append(on_line_poly(step.line, out))
            hypotheses.append(on_circle_poly(step.circle, out))
        elif isinstance(step, IntersectCircles):
            hypotheses.append(on_circle_poly(step.c1, out))
            hypotheses.append(on_circle_poly(step.c2, out))
        elif isinstance(step, FootOfPerpendicular):
            hypotheses.append(collinear_poly(step.a, step.b, out))
            hypotheses.append(
                (X(out) - X(step.point)) * (X(step.b) - X(step.a))
                + (Y(out) - Y(step.point)) * (Y(step.b) - Y(step.a))
            )
        elif isinstance(step, PointOnLine):
            hypotheses.append(collinear_poly(step.a, step.b, out))
        elif isinstance(step, PointOnCircle):
            hypotheses.append(on_circle_poly(step.circle, out))
        elif isinstance(step, RegularPolygonVertex):
            m00, m01, m10, m11 = polygon_matrix(step.n, step.k)
            vx = X(step.b) - X(step.a)
            vy = Y(step.b) - Y(step.a)
            hx = X(out) - X(step.a) - quad_coeff(m00) * vx - quad_coeff(m01) * vy
            hy = Y(out) - Y(step.a) - quad_coeff(m10) * vx - quad_coeff(m11) * vy
            hypotheses.append(hx)
            hypotheses.append(hy)
        else:
            raise UnsupportedStepError(str(step))
    if aux_index is not None:
        s = Polynomial.variable(aux_index, nvars)
        hypotheses.append(s * s - const(3))

    free_points = [
        p
        for p in points
        if construction.kind_of(p) == "free" and p not in pinned
    ]
    return AlgebraicTranslation(
        construction=construction,
        points=points,
        var_names=var_names,
        nvars=nvars,
        coord_polys=coord_polys,
        hypotheses=hypotheses,
        free_points=free_points,
        pinned=pinned,
        aux_index=aux_index,
    )


def algebraize_statement(stmt: st.Statement, translation: AlgebraicTranslation) -> List[Polynomial]:
    """Thesis polynomial(s) for a statement; identity yields one per coordinate."""
    cp = translation.coord_polys
    for p in stmt.involved_points():
        if p not in cp:
            raise UnsupportedStatementError(f"point '{p}' not translated")

    def X(p):
        return cp[p][0]

    def Y(p):
        return cp[p][1]

    def dist2(a, b):
        dx = X(b) - X(a)
        dy = Y(b) - Y(a)
        return dx * dx + dy * dy

    if stmt.kind == st.IDENTITY:
        p, q = stmt.points
        return [X(p) - X(q), Y(p) - Y(q)]
    if stmt.kind == st.COLLINEAR:
        a, b, c = stmt.points
        return [(X(b) - X(a)) * (Y(c) - Y(a)) - (Y(b) - Y(a)) * (X(c) - X(a))]
    if stmt.kind == st.CONCYCLIC:
        nvars = translation.nvars
        rows = [(X(p) * X(p) + Y(p) * Y(p), X(p), Y(p)) for p in stmt.points]

        def det3(r):
            return (
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            )

        total = Polynomial.zero(nvars)
        sign = -1
        for i in range(4):
            minor = [rows[j] for j in range(4) if j != i]
            term = det3(minor)
            total = total - term if sign < 0 else total + term
            sign = -sign
        return [total]
    if stmt.kind == st.PARALLEL:
        (a, b), (c, d) = stmt.lines[0][:2], stmt.lines[1][:2]
        return [(X(b) - X(a)) * (Y(d) - Y(c)) - (Y(b) - Y(a)) * (X(d) - X(c))]
    if stmt.kind == st.PERPENDICULAR:
        (a, b), (c, d) = stmt.lines[0][:2], stmt.lines[1][:2]
        return [(X(b) - X(a)) * (X(d) - X(c)) + (Y(b) - Y(a)) * (Y(d) - Y(c))]
    if stmt.kind == st.CONGRUENT:
        (a, b), (c, d) = stmt.segments
        return [dist2(a, b) - dist2(c, d)]
    raise UnsupportedStatementError(f"unknown statement kind '{stmt.kind}'")
