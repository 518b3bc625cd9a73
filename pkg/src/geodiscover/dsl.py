"""Line-oriented construction language.

One step per line, ``#`` starts a comment, identifiers are case-sensitive and
coordinates are parsed exactly as rationals::

    point A 0 0
    point B 4 0
    point C 2 2
    midpoint D B C
    midpoint E A C
    intersect G line(A,D) line(B,E)
    circumcircle k A B C
    intersect2 P line(E,F) k near 1.2 3.4
    regular_polygon A B 6 C D E F
    foot F P A B
    on_line P A B near 1.5 2.0
    hide P
    discover D

Line references: ``line(A,B)``, ``parallel(P,A,B)`` (through P, parallel to
AB), ``perpendicular(P,A,B)`` (through P, perpendicular to AB),
``perp_bisector(A,B)``.  Circle references: a declared name, ``circle(O,A)``
or ``circum(A,B,C)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

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
    Step,
    apply_step,
    step_output,
)
from .errors import ArityError, DegenerateStepError, DslSyntaxError, UnknownIdentifierError

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_NUMBER = re.compile(r"^-?\d+(\.\d+)?$|^-?\d+/\d+$")
_REF = re.compile(r"^(line|parallel|perpendicular|perp_bisector|circle|circum)\(([^()]*)\)$")


@dataclass
class ParsedProgram:
    construction: Construction
    discover_targets: List[str] = field(default_factory=list)


@dataclass
class _Token:
    text: str
    line: int
    col: int


def _tokenize(text: str) -> List[List[_Token]]:
    lines = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [
            _Token(m.group(0), ln, m.start() + 1)
            for m in re.finditer(r"\S+", body)
        ]
        if toks:
            lines.append(toks)
    return lines


def _need(toks: List[_Token], count: int):
    if len(toks) - 1 != count:
        t = toks[0]
        raise ArityError(
            f"'{t.text}' expects {count} argument(s), got {len(toks) - 1}", t.line, t.col
        )


def _ident(tok: _Token) -> str:
    if not _IDENT.match(tok.text):
        raise DslSyntaxError(f"invalid identifier '{tok.text}'", tok.line, tok.col)
    return tok.text


def _rational(tok: _Token) -> Fraction:
    if not _NUMBER.match(tok.text):
        raise DslSyntaxError(f"invalid number '{tok.text}'", tok.line, tok.col)
    return Fraction(tok.text)


def _floatval(tok: _Token) -> float:
    return float(_rational(tok))


class _Builder:
    def __init__(self):
        self.construction = Construction()
        self.discover: List[str] = []
        self.hidden: List[str] = []

    def point(self, name: str) -> str:
        return name

    def check_point(self, tok: _Token) -> str:
        name = _ident(tok)
        if not self.construction.has_point(name):
            raise UnknownIdentifierError(f"unknown point '{name}'", tok.line, tok.col)
        return name

    def add(self, step: Step, tok: _Token):
        try:
            self.construction = apply_step(self.construction, step)
        except DegenerateStepError as exc:
            raise DegenerateStepError(f"line {tok.line}: {exc}") from exc

    def line_ref(self, tok: _Token) -> LineRef:
        m = _REF.match(tok.text)
        if not m or m.group(1) in ("circle", "circum"):
            raise DslSyntaxError(f"expected a line reference, got '{tok.text}'", tok.line, tok.col)
        kind, argstr = m.group(1), m.group(2)
        args = [a for a in argstr.split(",") if a]
        for a in args:
            if not self.construction.has_point(a):
                raise UnknownIdentifierError(f"unknown point '{a}'", tok.line, tok.col)
        if kind == "line":
            if len(args) != 2:
                raise ArityError("line(A,B) takes 2 points", tok.line, tok.col)
            return LineRef("through", args[0], args[1])
        if kind in ("parallel", "perpendicular"):
            if len(args) != 3:
                raise ArityError(f"{kind}(P,A,B) takes 3 points", tok.line, tok.col)
            return LineRef(kind, args[1], args[2], through=args[0])
        if len(args) != 2:
            raise ArityError("perp_bisector(A,B) takes 2 points", tok.line, tok.col)
        return LineRef("perp_bisector", args[0], args[1])

    def circle_ref(self, tok: _Token) -> CircleRef:
        m = _REF.match(tok.text)
        if m and m.group(1) in ("circle", "circum"):
            kind, argstr = m.group(1), m.group(2)
            args = [a for a in argstr.split(",") if a]
            for a in args:
                if not self.construction.has_point(a):
                    raise UnknownIdentifierError(f"unknown point '{a}'", tok.line, tok.col)
            if kind == "circle":
                if len(args) != 2:
                    raise ArityError("circle(O,A) takes 2 points", tok.line, tok.col)
                return CircleRef("center_point", tuple(args))
            if len(args) != 3:
                raise ArityError("circum(A,B,C) takes 3 points", tok.line, tok.col)
            return CircleRef("through3", tuple(args))
        name = _ident(tok)
        ref = self.construction.circles.get(name)
        if ref is None:
            raise UnknownIdentifierError(f"unknown circle '{name}'", tok.line, tok.col)
        return ref

    def any_ref(self, tok: _Token):
        m = _REF.match(tok.text)
        if m:
            if m.group(1) in ("circle", "circum"):
                return self.circle_ref(tok)
            return self.line_ref(tok)
        return self.circle_ref(tok)

    # hint handling ---------------------------------------------------------

    def _hint_or_param(self, toks: List[_Token], start: int) -> Tuple[str, tuple]:
        if start >= len(toks):
            t = toks[0]
            raise ArityError(f"'{t.text}' needs 'near x y' or 'param t'", t.line, t.col)
        mode = toks[start].text
        if mode == "near":
            if len(toks) != start + 3:
                raise ArityError("'near' takes 2 coordinates", toks[start].line, toks[start].col)
            return "near", (_floatval(toks[start + 1]), _floatval(toks[start + 2]))
        if mode == "param":
            if len(toks) != start + 2:
                raise ArityError("'param' takes 1 value", toks[start].line, toks[start].col)
            return "param", (_rational(toks[start + 1]),)
        raise DslSyntaxError(f"expected 'near' or 'param', got '{mode}'", toks[start].line, toks[start].col)


def parse_dsl(text: str) -> ParsedProgram:
    """Parse program text into a construction plus trailing directives."""
    b = _Builder()
    for toks in _tokenize(text):
        op = toks[0]
        rest = toks[1:]
        if op.text == "point":
            _need(toks, 3)
            b.add(FreePoint(_ident(rest[0]), _rational(rest[1]), _rational(rest[2])), op)
        elif op.text == "midpoint":
            _need(toks, 3)
            b.add(Midpoint(_ident(rest[0]), b.check_point(rest[1]), b.check_point(rest[2])), op)
        elif op.text == "foot":
            _need(toks, 4)
            b.add(
                FootOfPerpendicular(
                    _ident(rest[0]), b.check_point(rest[1]), b.check_point(rest[2]), b.check_point(rest[3])
                ),
                op,
            )
        elif op.text == "intersect":
            _need(toks, 3)
            b.add(IntersectLines(_ident(rest[0]), b.line_ref(rest[1]), b.line_ref(rest[2])), op)
        elif op.text == "intersect2":
            if len(rest) < 3:
                raise ArityError("intersect2 takes a point, two references and a hint", op.line, op.col)
            name = _ident(rest[0])
            r1 = b.any_ref(rest[1])
            r2 = b.any_ref(rest[2])
            mode, vals = b._hint_or_param(toks, 4)
            if mode != "near":
                raise DslSyntaxError("intersect2 needs a 'near x y' hint", op.line, op.col)
            if isinstance(r1, LineRef) and isinstance(r2, CircleRef):
                b.add(IntersectLineCircle(name, r1, r2, vals), op)
            elif isinstance(r1, CircleRef) and isinstance(r2, LineRef):
                b.add(IntersectLineCircle(name, r2, r1, vals), op)
            elif isinstance(r1, CircleRef) and isinstance(r2, CircleRef):
                b.add(IntersectCircles(name, r1, r2, vals), op)
            else:
                raise DslSyntaxError("intersect2 needs at least one circle (use 'intersect' for two lines)", op.line, op.col)
        elif op.text == "circle":
            _need(toks, 3)
            name = _ident(rest[0])
            ref = CircleRef("center_point", (b.check_point(rest[1]), b.check_point(rest[2])))
            b.add(NamedCircle(name, ref), op)
        elif op.text == "circumcircle":
            _need(toks, 4)
            name = _ident(rest[0])
            ref = CircleRef(
                "through3", (b.check_point(rest[1]), b.check_point(rest[2]), b.check_point(rest[3]))
            )
            b.add(NamedCircle(name, ref), op)
        elif op.text == "on_line":
            if len(rest) < 3:
                raise ArityError("on_line takes a point, two points and a hint", op.line, op.col)
            name = _ident(rest[0])
            a, c = b.check_point(rest[1]), b.check_point(rest[2])
            mode, vals = b._hint_or_param(toks, 4)
            if mode == "param":
                t = vals[0]
            else:
                pa = b.construction.coords[a]
                pc = b.construction.coords[c]
                dx, dy = pc[0] - pa[0], pc[1] - pa[1]
                n2 = dx * dx + dy * dy
                if n2 <= 0:
                    raise DegenerateStepError(f"line {op.line}: on_line over coincident points")
                tf = ((vals[0] - pa[0]) * dx + (vals[1] - pa[1]) * dy) / n2
                t = Fraction(tf).limit_denominator(10**6)
            b.add(PointOnLine(name, a, c, t), op)
        elif op.text == "on_circle":
            if len(rest) < 2:
                raise ArityError("on_circle takes a point, a circle and a hint", op.line, op.col)
            name = _ident(rest[0])
            ref = b.circle_ref(rest[1])
            mode, vals = b._hint_or_param(toks, 3)
            if mode == "param":
                t = vals[0]
            else:
                from .construction import _circle_center_r2

                center, _, rad = _circle_center_r2(ref, lambda n: b.construction.coords[n], False)
                ang_hint = math.atan2(vals[1] - center[1], vals[0] - center[0])
                ang_rad = math.atan2(rad[1] - center[1], rad[0] - center[0])
                theta = ang_hint - ang_rad
                tf = math.tan(theta / 2.0)
                if not math.isfinite(tf) or abs(tf) > 1e6:
                    raise DslSyntaxError(
                        "hint is diametrically opposite the radius point", op.line, op.col
                    )
                t = Fraction(tf).limit_denominator(10**6)
            b.add(PointOnCircle(name, ref, t), op)
        elif op.text == "regular_polygon":
            if len(rest) < 4:
                raise ArityError("regular_polygon A B n V2 ... V(n-1)", op.line, op.col)
            a, c = b.check_point(rest[0]), b.check_point(rest[1])
            try:
                n = int(rest[2].text)
            except ValueError:
                raise DslSyntaxError(f"invalid vertex count '{rest[2].text}'", rest[2].line, rest[2].col)
            names = rest[3:]
            if len(names) != n - 2:
                raise ArityError(
                    f"regular_polygon with n={n} names {n - 2} new vertices, got {len(names)}",
                    op.line,
                    op.col,
                )
            for k, ntok in enumerate(names, start=2):
                b.add(RegularPolygonVertex(_ident(ntok), a, c, n, k), op)
        elif op.text == "polygon_vertex":
            _need(toks, 5)
            name = _ident(rest[0])
            a, c = b.check_point(rest[1]), b.check_point(rest[2])
            try:
                n, k = int(rest[3].text), int(rest[4].text)
            except ValueError:
                raise DslSyntaxError("polygon_vertex V A B n k", op.line, op.col)
            b.add(RegularPolygonVertex(name, a, c, n, k), op)
        elif op.text == "hide":
            if not rest:
                raise ArityError("hide takes at least one point", op.line, op.col)
            for tok in rest:
                b.hidden.append(b.check_point(tok))
        elif op.text == "discover":
            _need(toks, 1)
            b.discover.append(b.check_point(rest[0]))
        else:
            raise DslSyntaxError(f"unknown command '{op.text}'", op.line, op.col)
    construction = b.construction
    if b.hidden:
        construction = construction.with_hidden(b.hidden)
    return ParsedProgram(construction, b.discover)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_line(ref: LineRef) -> str:
    if ref.kind == "through":
        return f"line({ref.a},{ref.b})"
    if ref.kind == "perp_bisector":
        return f"perp_bisector({ref.a},{ref.b})"
    return f"{ref.kind}({ref.through},{ref.a},{ref.b})"


def _fmt_circle(ref: CircleRef) -> str:
    if ref.kind == "center_point":
        return f"circle({ref.points[0]},{ref.points[1]})"
    return f"circum({ref.points[0]},{ref.points[1]},{ref.points[2]})"


def to_dsl(construction: Construction, discover: Optional[List[str]] = None) -> str:
    """Serialize; parsing the output reproduces an equal construction."""
    out: List[str] = []
    steps = list(construction.steps)
    i = 0
    while i < len(steps):
        s = steps[i]
        if isinstance(s, FreePoint):
            out.append(f"point {s.name} {_fmt_q(s.x)} {_fmt_q(s.y)}")
        elif isinstance(s, Midpoint):
            out.append(f"midpoint {s.name} {s.a} {s.b}")
        elif isinstance(s, FootOfPerpendicular):
            out.append(f"foot {s.name} {s.point} {s.a} {s.b}")
        elif isinstance(s, IntersectLines):
            out.append(f"intersect {s.name} {_fmt_line(s.l1)} {_fmt_line(s.l2)}")
        elif isinstance(s, IntersectLineCircle):
            out.append(
                f"intersect2 {s.name} {_fmt_line(s.line)} {_fmt_circle(s.circle)} near {s.hint[0]!r} {s.hint[1]!r}"
            )
        elif isinstance(s, IntersectCircles):
            out.append(
                f"intersect2 {s.name} {_fmt_circle(s.c1)} {_fmt_circle(s.c2)} near {s.hint[0]!r} {s.hint[1]!r}"
            )
        elif isinstance(s, NamedCircle):
            if s.circle.kind == "center_point":
                out.append(f"circle {s.name} {s.circle.points[0]} {s.circle.points[1]}")
            else:
                out.append(f"circumcircle {s.name} " + " ".join(s.circle.points))
        elif isinstance(s, PointOnLine):
            out.append(f"on_line {s.name} {s.a} {s.b} param {_fmt_q(s.t)}")
        elif isinstance(s, PointOnCircle):
            out.append(f"on_circle {s.name} {_fmt_circle(s.circle)} param {_fmt_q(s.t)}")
        elif isinstance(s, RegularPolygonVertex):
            group = [s]
            j = i + 1
            while (
                j < len(steps)
                and isinstance(steps[j], RegularPolygonVertex)
                and steps[j].a == s.a
                and steps[j].b == s.b
                and steps[j].n == s.n
                and steps[j].k == group[-1].k + 1
            ):
                group.append(steps[j])
                j += 1
            if group[0].k == 2 and len(group) == s.n - 2:
                names = " ".join(v.name for v in group)
                out.append(f"regular_polygon {s.a} {s.b} {s.n} {names}")
                i = j - 1
            else:
                out.append(f"polygon_vertex {s.name} {s.a} {s.b} {s.n} {s.k}")
        i += 1
    if construction.hidden:
        out.append("hide " + " ".join(sorted(construction.hidden)))
    for target in discover or []:
        out.append(f"discover {target}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# statement text form (used by the prove/check commands)
# ---------------------------------------------------------------------------


_LINE_KEYS = ("kind", "a", "b", "through")


def _line_to_json(ref: LineRef) -> dict:
    out = {"kind": ref.kind, "a": ref.a, "b": ref.b}
    if ref.through is not None:
        out["through"] = ref.through
    return out


def _line_from_json(d: dict) -> LineRef:
    return LineRef(d["kind"], d["a"], d["b"], d.get("through"))


def _circle_to_json(ref: CircleRef) -> dict:
    return {"kind": ref.kind, "points": list(ref.points)}


def _circle_from_json(d: dict) -> CircleRef:
    return CircleRef(d["kind"], tuple(d["points"]))


def construction_to_json(construction: Construction) -> dict:
    """Step-list wire format; the inverse of :func:`construction_from_json`."""
    steps = []
    for s in construction.steps:
        if isinstance(s, FreePoint):
            steps.append({"op": "point", "name": s.name, "x": _fmt_q(s.x), "y": _fmt_q(s.y)})
        elif isinstance(s, Midpoint):
            steps.append({"op": "midpoint", "name": s.name, "a": s.a, "b": s.b})
        elif isinstance(s, IntersectLines):
            steps.append(
                {"op": "intersect", "name": s.name, "l1": _line_to_json(s.l1), "l2": _line_to_json(s.l2)}
            )
        elif isinstance(s, IntersectLineCircle):
            steps.append(
                {
                    "op": "intersect_line_circle",
                    "name": s.name,
                    "line": _line_to_json(s.line),
                    "circle": _circle_to_json(s.circle),
                    "hint": list(s.hint),
                }
            )
        elif isinstance(s, IntersectCircles):
            steps.append(
                {
                    "op": "intersect_circles",
                    "name": s.name,
                    "c1": _circle_to_json(s.c1),
                    "c2": _circle_to_json(s.c2),
                    "hint": list(s.hint),
                }
            )
        elif isinstance(s, FootOfPerpendicular):
            steps.append({"op": "foot", "name": s.name, "point": s.point, "a": s.a, "b": s.b})
        elif isinstance(s, PointOnLine):
            steps.append({"op": "on_line", "name": s.name, "a": s.a, "b": s.b, "t": _fmt_q(s.t)})
        elif isinstance(s, PointOnCircle):
            steps.append(
                {"op": "on_circle", "name": s.name, "circle": _circle_to_json(s.circle), "t": _fmt_q(s.t)}
            )
        elif isinstance(s, RegularPolygonVertex):
            steps.append(
                {"op": "polygon_vertex", "name": s.name, "a": s.a, "b": s.b, "n": s.n, "k": s.k}
            )
        elif isinstance(s, NamedCircle):
            steps.append({"op": "circle_def", "name": s.name, "circle": _circle_to_json(s.circle)})
    return {"steps": steps, "hidden": sorted(construction.hidden)}


def construction_from_json(payload: dict) -> Construction:
    from .construction import build

    steps: List[Step] = []
    for d in payload.get("steps", []):
        op = d.get("op")
        if op == "point":
            steps.append(FreePoint(d["name"], Fraction(d["x"]), Fraction(d["y"])))
        elif op == "midpoint":
            steps.append(Midpoint(d["name"], d["a"], d["b"]))
        elif op == "intersect":
            steps.append(IntersectLines(d["name"], _line_from_json(d["l1"]), _line_from_json(d["l2"])))
        elif op == "intersect_line_circle":
            steps.append(
                IntersectLineCircle(
                    d["name"], _line_from_json(d["line"]), _circle_from_json(d["circle"]), tuple(d["hint"])
                )
            )
        elif op == "intersect_circles":
            steps.append(
                IntersectCircles(
                    d["name"], _circle_from_json(d["c1"]), _circle_from_json(d["c2"]), tuple(d["hint"])
                )
            )
        elif op == "foot":
            steps.append(FootOfPerpendicular(d["name"], d["point"], d["a"], d["b"]))
        elif op == "on_line":
            steps.append(PointOnLine(d["name"], d["a"], d["b"], Fraction(d["t"])))
        elif op == "on_circle":
            steps.append(PointOnCircle(d["name"], _circle_from_json(d["circle"]), Fraction(d["t"])))
        elif op == "polygon_vertex":
            steps.append(RegularPolygonVertex(d["name"], d["a"], d["b"], int(d["n"]), int(d["k"])))
        elif op == "circle_def":
            steps.append(NamedCircle(d["name"], _circle_from_json(d["circle"])))
        else:
            raise DslSyntaxError(f"unknown step op '{op}'", 1, 1)
    return build(steps, payload.get("hidden", ()))


def parse_statement(text: str, construction: Construction) -> st.Statement:
    """Compact statement syntax: ``equal:G,H``, ``collinear:A,B,C``,
    ``concyclic:A,B,C,D``, ``parallel:A,B;C,D``, ``perpendicular:A,B;C,D``,
    ``congruent:A,B;C,D``."""
    if ":" not in text:
        raise DslSyntaxError(f"expected '<kind>:<points>', got '{text}'", 1, 1)
    kind, body = text.split(":", 1)
    kind = kind.strip()

    def pts(chunk: str, n: int) -> Tuple[str, ...]:
        names = [p.strip() for p in chunk.split(",") if p.strip()]
        if len(names) != n:
            raise DslSyntaxError(f"'{kind}' expects {n} points per group", 1, 1)
        for p in names:
            if not construction.has_point(p):
                raise UnknownIdentifierError(f"unknown point '{p}'", 1, 1)
        return tuple(names)

    if kind == "equal":
        return st.identity(*pts(body, 2))
    if kind == "collinear":
        return st.collinear(*pts(body, 3))
    if kind == "concyclic":
        return st.concyclic(*pts(body, 4))
    if kind in ("parallel", "perpendicular", "congruent"):
        groups = body.split(";")
        if len(groups) != 2:
            raise DslSyntaxError(f"'{kind}' expects two groups separated by ';'", 1, 1)
        g1, g2 = pts(groups[0], 2), pts(groups[1], 2)
        if kind == "parallel":
            return st.parallel(g1, g2)
        if kind == "perpendicular":
            return st.perpendicular(g1, g2)
        return st.congruent(g1, g2)
    raise DslSyntaxError(f"unknown statement kind '{kind}'", 1, 1)


def format_statement(stmt: st.Statement) -> str:
    if stmt.kind in (st.IDENTITY, st.COLLINEAR, st.CONCYCLIC):
        kind = {"identity": "equal"}.get(stmt.kind, stmt.kind)
        return f"{kind}:" + ",".join(stmt.points)
    if stmt.kind in (st.PARALLEL, st.PERPENDICULAR):
        return f"{stmt.kind}:" + ";".join(",".join(l) for l in stmt.lines)
    return "congruent:" + ";".join(",".join(s) for s in stmt.segments)
