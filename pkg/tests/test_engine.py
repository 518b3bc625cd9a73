"""Discovery pipeline: reports, filters, pruning, determinism, halting."""

import pytest

from geodiscover import statements as st
from geodiscover.dsl import parse_dsl
from geodiscover.engine import (
    DiscoveryConfig,
    discover,
    filter_relevant,
    filter_trivial,
    prove_statement,
)
from geodiscover.errors import UnknownReferenceError, WallTimeExceededError
from geodiscover.registry import Registry

from helpers import random_construction

MIDLINE = """\
point A 0 0
point B 4 0
point C 2 2
midpoint D B C
midpoint E A C
"""

PARALLELOGRAM = """\
point P1 0 0
point P2 4 0
point P3 5 3
intersect P4 parallel(P3,P1,P2) parallel(P1,P2,P3)
midpoint P5 P1 P3
midpoint P6 P2 P4
"""

TWO_BRANCH = """\
point A 0 0
point B 6 0
point O 3 1
circle k O A
intersect2 P1 line(A,B) k near 5.5 0
intersect2 P2 line(A,B) k near 5.5 0
"""


def kinds(report):
    return sorted((t.kind, tuple(t.points)) for t in report.theorems)


def test_midline_report_exact_content():
    c = parse_dsl(MIDLINE).construction
    report = discover(c, "D")
    assert not report.halted
    assert kinds(report) == [
        ("congruent", ("B", "C", "D")),
        ("parallel", ("A", "B", "D", "E")),
    ]
    par = next(t for t in report.theorems if t.kind == "parallel")
    assert par.lines == [["A", "B"], ["D", "E"]]
    cong = next(t for t in report.theorems if t.kind == "congruent")
    assert cong.segments == [["B", "D"], ["C", "D"]]
    # every reported statement carries a proved verdict
    statuses = {r.verdict for r in report.verdict_log}
    assert statuses <= {"proved", "refuted"}


def test_parallelogram_suppresses_by_construction_parallels():
    c = parse_dsl(PARALLELOGRAM).construction
    report = discover(c, "P5")
    by_kind = {}
    for t in report.theorems:
        by_kind.setdefault(t.kind, []).append(t)
    assert [t.points for t in by_kind["identity"]] == [["P5", "P6"]]
    # P3P4 is parallel to P1P2 by construction and must not be reported
    assert "parallel" not in by_kind
    assert "perpendicular" not in by_kind


def test_relevance_filter_keeps_target_statements():
    reg = Registry(["A", "B", "C", "D", "E"])
    target = reg.rep("D")
    stmts = [
        st.congruent(("A", "E"), ("C", "E")),
        st.parallel(("D", "E"), ("A", "B")),
        st.identity("A", "E"),
    ]
    kept = filter_relevant(stmts, target, reg)
    assert st.congruent(("A", "E"), ("C", "E")) not in kept
    assert st.parallel(("D", "E"), ("A", "B")) in kept
    # identity statements are exempt from the relevance rule
    assert st.identity("A", "E") in kept


def test_trivial_filter_drops_by_construction_incidences():
    c = parse_dsl(MIDLINE).construction
    trivial = Registry(c.point_names())
    for fact in c.trivial_facts()[0]:
        trivial.register_collinear(tuple(fact.points))
    stmts = [
        st.collinear("B", "C", "D"),
        st.congruent(("B", "D"), ("C", "D")),
    ]
    kept = filter_trivial(stmts, trivial)
    assert st.collinear("B", "C", "D") not in kept
    assert st.congruent(("B", "D"), ("C", "D")) in kept
    assert filter_trivial([], trivial) == []


def test_single_free_point_empty_report():
    c = parse_dsl("point A 1 1\n").construction
    report = discover(c, "A")
    assert report.theorems == []
    assert not report.halted


def test_unknown_target_rejected():
    c = parse_dsl(MIDLINE).construction
    with pytest.raises(UnknownReferenceError):
        discover(c, "Z")


def test_hidden_points_excluded_from_enumeration():
    c = parse_dsl(MIDLINE).construction.with_hidden(["E"])
    report = discover(c, "D")
    assert kinds(report) == [("congruent", ("B", "C", "D"))]
    with pytest.raises(UnknownReferenceError):
        discover(c, "E")


def test_determinism_byte_identical_without_timings():
    c = parse_dsl(MIDLINE).construction
    cfg = DiscoveryConfig(seed=7)
    a = discover(c, "D", cfg).to_json(include_timings=False)
    b = discover(c, "D", cfg).to_json(include_timings=False)
    assert a == b


@pytest.mark.parametrize("text,target", [(MIDLINE, "D"), (PARALLELOGRAM, "P5")])
def test_pruning_equivalence(text, target):
    c = parse_dsl(text).construction
    pruned = discover(c, target, DiscoveryConfig(prune=True))
    brute = discover(c, target, DiscoveryConfig(prune=False))
    assert pruned.to_json(include_timings=False) == brute.to_json(include_timings=False)
    # pruning only removes work, never results
    assert len(brute.verdict_log) >= len(pruned.verdict_log)


def test_pruning_equivalence_random_constructions():
    for seed in range(6):
        c = random_construction(seed, max_points=6)
        target = c.point_names()[-1]
        pruned = discover(c, target, DiscoveryConfig(prune=True))
        brute = discover(c, target, DiscoveryConfig(prune=False))
        assert pruned.to_json(include_timings=False) == brute.to_json(
            include_timings=False
        ), f"seed {seed} diverged"


def test_identity_halt_on_timeout():
    c = parse_dsl(TWO_BRANCH).construction
    report = discover(c, "P1", DiscoveryConfig(timeout_s=1e-6))
    assert report.halted
    assert "could not be decided" in report.halt_reason
    assert report.theorems == []
    assert "redrawn" in report.to_text()


def test_identity_of_twin_intersections_refuted_with_budget():
    # with a real budget the both-branch translation refutes P1 = P2, so the
    # run continues instead of halting
    c = parse_dsl(TWO_BRANCH).construction
    report = discover(c, "P1", DiscoveryConfig(timeout_s=5.0))
    assert not report.halted
    idents = [r for r in report.verdict_log if r.statement == "equal:P1,P2"]
    assert idents and idents[0].verdict == "refuted"


def test_wall_cap_raises():
    c = parse_dsl(MIDLINE).construction
    with pytest.raises(WallTimeExceededError):
        discover(c, "D", DiscoveryConfig(wall_cap_s=1e-9))


def test_cancellation():
    from geodiscover.errors import DiscoveryCancelledError

    c = parse_dsl(MIDLINE).construction
    with pytest.raises(DiscoveryCancelledError):
        discover(c, "D", DiscoveryConfig(cancel=lambda: True))


def test_prove_statement_verdicts():
    c = parse_dsl(MIDLINE).construction
    assert prove_statement(c, st.parallel(("D", "E"), ("A", "B"))).proved
    v = prove_statement(c, st.collinear("A", "B", "C"))
    assert v.refuted
    assert v.counterexample is not None
    # pinned and unpinned proofs agree
    assert prove_statement(c, st.parallel(("D", "E"), ("A", "B")), pin=False).proved
    assert prove_statement(c, st.collinear("A", "B", "C"), pin=False).refuted


def test_class_level_reporting_single_circle_item():
    text = """\
point A 0 0
point B 8 0
point C 2 6
midpoint D B C
midpoint E C A
midpoint F A B
foot FA A B C
foot FB B A C
foot FC C A B
intersect O line(A,FA) line(B,FB)
midpoint J A O
midpoint K B O
midpoint L C O
"""
    c = parse_dsl(text).construction
    report = discover(c, "D")
    circles = [t for t in report.theorems if t.kind == "concyclic"]
    assert len(circles) == 1
    assert circles[0].points == ["D", "E", "F", "FA", "FB", "FC", "J", "K", "L"]


def test_square_discovery():
    text = """\
point A 0 0
point B 3 0
regular_polygon A B 4 C D
"""
    c = parse_dsl(text).construction
    assert c.coords["C"] == (3.0, 3.0) and c.coords["D"] == (0.0, 3.0)
    report = discover(c, "A")
    by_kind = {}
    for t in report.theorems:
        by_kind.setdefault(t.kind, []).append(t)
    assert [t.points for t in by_kind["concyclic"]] == [["A", "B", "C", "D"]]
    # sides in one congruence class, diagonals in another
    seg_classes = {tuple(map(tuple, t.segments)) for t in by_kind["congruent"]}
    assert (("A", "C"), ("B", "D")) in seg_classes
    assert (("A", "B"), ("A", "D"), ("B", "C"), ("C", "D")) in seg_classes
    # the two diagonals are perpendicular, as are opposite side pairs
    assert "perpendicular" in by_kind


def test_equilateral_triangle_discovery():
    text = """\
point A 0 0
point B 2 0
regular_polygon A B 3 C
midpoint M A B
"""
    c = parse_dsl(text).construction
    x, y = c.coords["C"]
    assert abs(x - 1.0) < 1e-12 and abs(y - 3 ** 0.5) < 1e-12
    report = discover(c, "C")
    cong = [tuple(map(tuple, t.segments)) for t in report.theorems if t.kind == "congruent"]
    assert (("A", "B"), ("A", "C"), ("B", "C")) in cong
    # the median from C is perpendicular to AB
    perp = [t for t in report.theorems if t.kind == "perpendicular"]
    assert any(
        any("M" in line and "C" in line for line in t.axes[0] + t.axes[1]) for t in perp
    )


def test_hexagon_discovery_on_center_point():
    text = """\
point A 0 0
point B 2 0
regular_polygon A B 6 C D E F
intersect G line(A,D) line(B,E)
intersect H line(B,E) line(C,F)
intersect I line(A,D) line(C,F)
"""
    c = parse_dsl(text).construction
    report = discover(c, "G")
    idents = [t.points for t in report.theorems if t.kind == "identity"]
    assert idents == [["G", "H", "I"]]
    # spokes from the center are congruent with the sides
    cong = [t for t in report.theorems if t.kind == "congruent"]
    assert any(["A", "G"] in t.segments for t in cong)


def test_euler_line_different_triangle():
    text = """\
point A -3 1
point B 5 -2
point C 2 7
intersect G perpendicular(A,B,C) perpendicular(B,A,C)
midpoint MA B C
midpoint MB A C
intersect J line(A,MA) line(B,MB)
intersect P perp_bisector(B,C) perp_bisector(A,C)
"""
    c = parse_dsl(text).construction
    report = discover(c, "P")
    collinear = [tuple(t.points) for t in report.theorems if t.kind == "collinear"]
    assert ("G", "J", "P") in collinear


def test_golden_reports(golden_dir):
    for name, target in [("midline", "D"), ("hexagon", "F")]:
        prog = parse_dsl((golden_dir / f"{name}.dsl").read_text())
        report = discover(prog.construction, target)
        expected = (golden_dir / f"{name}_report.json").read_text()
        assert report.to_json(include_timings=False) + "\n" == expected, name
