"""Numeric predicates and the resampling filter."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hst

from geodiscover import statements as st
from geodiscover.construction import (
    CircleRef,
    FreePoint,
    IntersectLineCircle,
    LineRef,
    Midpoint,
    build,
)
from geodiscover.dsl import parse_dsl
from geodiscover.errors import NonFiniteError, ResampleExhaustedError
from geodiscover.numeric import (
    check_statement,
    concyclic_det,
    diameter,
    draw_instances,
    numeric_predicate,
    resample_check,
)

MIDLINE = """\
point A 0 0
point B 4 0
point C 2 2
midpoint D B C
midpoint E A C
"""


def test_collinear_exact_zero():
    assert numeric_predicate(st.COLLINEAR, [(0, 0), (1, 1), (2, 2)])


def test_concyclic_unit_circle_and_counterexample():
    assert numeric_predicate(st.CONCYCLIC, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    pts = [(0, 0), (1, 0), (0, 1), (2, 2)]
    # determinant expanded by hand: the only nonzero entry of the first row
    # is the trailing 1, leaving -det[[1,1,0],[1,0,1],[8,2,2]] = -4
    assert concyclic_det(pts) == -4
    assert not numeric_predicate(st.CONCYCLIC, pts)


def test_parallel_midline_instance():
    # D(3,1), E(1,1) against A(0,0), B(4,0): cross = (-2)*0 - 0*4 = 0
    assert numeric_predicate(st.PARALLEL, [(3, 1), (1, 1), (0, 0), (4, 0)])


def test_perpendicular_and_lengths():
    assert numeric_predicate(st.PERPENDICULAR, [(0, 0), (1, 0), (0, 0), (0, 3)])
    assert numeric_predicate(st.CONGRUENT, [(4, 0), (3, 1), (2, 2), (3, 1)])
    assert not numeric_predicate(st.CONGRUENT, [(0, 0), (4, 0), (0, 0), (1, 0)])


def test_identity_needs_scale():
    assert numeric_predicate(st.IDENTITY, [(1.0, 1.0), (1.0, 1.0 + 1e-12)], scale=10.0)
    assert not numeric_predicate(st.IDENTITY, [(0.0, 0.0), (1.0, 0.0)], scale=10.0)


def test_non_finite_rejected():
    with pytest.raises(NonFiniteError):
        numeric_predicate(st.COLLINEAR, [(0, 0), (float("nan"), 1), (2, 2)])


@settings(max_examples=40, deadline=None)
@given(hst.floats(0.001, 1000.0))
def test_scale_invariance(c):
    base = [(0.3, 0.7), (1.9, -2.2), (4.0, 0.01), (-3.0, 2.0)]
    for kind in (st.COLLINEAR, st.CONCYCLIC, st.PARALLEL, st.PERPENDICULAR, st.CONGRUENT):
        pts = base if kind != st.COLLINEAR else base[:3]
        scaled = [(x * c, y * c) for x, y in pts]
        assert numeric_predicate(kind, pts) == numeric_predicate(kind, scaled)
    pair = base[:2]
    scaled = [(x * c, y * c) for x, y in pair]
    assert numeric_predicate(st.IDENTITY, pair, scale=diameter(base)) == numeric_predicate(
        st.IDENTITY, scaled, scale=diameter([(x * c, y * c) for x, y in base])
    )


def test_resample_midline_parallel_true():
    c = parse_dsl(MIDLINE).construction
    stmt = st.parallel(("D", "E"), ("A", "B"))
    assert resample_check(c, stmt, k=5)


def test_resample_rejects_generic_collinearity():
    c = parse_dsl(MIDLINE).construction
    assert not resample_check(c, st.collinear("A", "B", "C"), k=5)


def test_resample_rejects_instance_coincidences():
    # the declared figure is an isosceles right triangle, so these hold
    # numerically at the instance but fail at the first generic resample
    c = parse_dsl(MIDLINE).construction
    instance_only = [
        st.concyclic("A", "B", "D", "E"),
        st.perpendicular(("B", "C"), ("A", "C")),
        st.congruent(("A", "D"), ("B", "E")),
    ]
    for stmt in instance_only:
        assert check_statement(stmt, c.coords)
        assert not resample_check(c, stmt, k=4)


def test_resample_determinism():
    c = parse_dsl(MIDLINE).construction
    a = draw_instances(c, k=4, seed=123)
    b = draw_instances(c, k=4, seed=123)
    assert a == b
    assert draw_instances(c, k=4, seed=124) != a


def test_resample_exhausted():
    # a near-point circle: random lines almost never hit it, and the draw
    # budget is cut to one attempt per required sample
    steps = [
        FreePoint("O", Fraction(0), Fraction(0)),
        FreePoint("R", Fraction(1), Fraction(100)),
        Midpoint("R1", "O", "R"),
        Midpoint("R2", "O", "R1"),
        Midpoint("R3", "O", "R2"),
        Midpoint("R4", "O", "R3"),
        Midpoint("R5", "O", "R4"),
        FreePoint("A", Fraction(-5), Fraction(3)),
        FreePoint("B", Fraction(5), Fraction(3)),
        IntersectLineCircle(
            "P",
            LineRef("through", "A", "B"),
            CircleRef("center_point", ("O", "R5")),
            (0.0, 3.0),
        ),
    ]
    # declared instance: the line y=3 crosses the circle of radius ~3.13
    c = build(steps)
    with pytest.raises(ResampleExhaustedError):
        draw_instances(c, k=4, seed=0, max_draw_factor=1)
