"""Acceptance suite.

Each test prints one PASS/FAIL line (run with ``pytest -s``).  Budgets are
wall-clock bounds; the per-check symbolic budget is 5 seconds except where a
test states otherwise.
"""

import itertools
import json
import random
import time
from pathlib import Path

import pytest

from geodiscover import statements as st
from geodiscover.dsl import parse_dsl
from geodiscover.engine import DiscoveryConfig, discover
from geodiscover.exact import QuadExt
from geodiscover.groebner import buchberger, ideal_membership, normal_form, s_polynomial
from geodiscover.numeric import random_exact_instance
from geodiscover.polynomial import DegRevLex

from helpers import brute_force_membership, random_construction, random_polynomial

GOLDEN = Path(__file__).parent / "golden"
REPO_ROOT = Path(__file__).resolve().parents[1]


def _report(name, ok, detail=""):
    print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, f"{name} failed: {detail}"


def _discover_file(name, target=None, config=None):
    prog = parse_dsl((GOLDEN / name).read_text())
    tgt = target or prog.discover_targets[-1]
    t0 = time.perf_counter()
    report = discover(prog.construction, tgt, config)
    return prog.construction, report, time.perf_counter() - t0


# -- 1: midline --------------------------------------------------------------


def test_criterion_1_midline():
    _, report, elapsed = _discover_file("midline.dsl")
    entries = {(t.kind, tuple(t.points)) for t in report.theorems}
    expected = {
        ("parallel", ("A", "B", "D", "E")),
        ("congruent", ("B", "C", "D")),
    }
    par = next(t for t in report.theorems if t.kind == "parallel")
    cong = next(t for t in report.theorems if t.kind == "congruent")
    ok = (
        entries == expected
        and sorted(map(tuple, par.lines)) == [("A", "B"), ("D", "E")]
        and sorted(map(tuple, cong.segments)) == [("B", "D"), ("C", "D")]
        and not any(t.kind == "collinear" for t in report.theorems)
        and elapsed < 2.0
    )
    _report("1 (midline)", ok, f"{elapsed:.2f}s, theorems={sorted(entries)}")


# -- 2: regular hexagon -------------------------------------------------------


def test_criterion_2_hexagon():
    _, report, elapsed = _discover_file("hexagon.dsl")
    identities = [t for t in report.theorems if t.kind == "identity"]
    circles = [t for t in report.theorems if t.kind == "concyclic"]
    grids = {t.class_id for t in report.theorems if t.kind in ("parallel", "perpendicular")}
    congruences = [t for t in report.theorems if t.kind == "congruent"]
    ok = (
        [t.points for t in identities] == [["G", "H", "I"]]
        and len(circles) == 1
        and circles[0].points == ["A", "B", "C", "D", "E", "F"]
        and len(grids) == 3
        and len(congruences) == 3
        and elapsed < 30.0
    )
    _report(
        "2 (hexagon)",
        ok,
        f"{elapsed:.2f}s, grids={len(grids)}, congruence classes={len(congruences)}",
    )


# -- 3: Euler line ------------------------------------------------------------


def test_criterion_3_euler_line():
    _, report, elapsed = _discover_file("euler.dsl", config=DiscoveryConfig(timeout_s=5.0))
    ident_sets = {tuple(t.points) for t in report.theorems if t.kind == "identity"}
    collinear_sets = {tuple(t.points) for t in report.theorems if t.kind == "collinear"}
    ok = (
        {("G", "H", "I"), ("J", "K", "L"), ("P", "Q", "R")} <= ident_sets
        and ("G", "J", "P") in collinear_sets
        and elapsed < 60.0
    )
    _report("3 (Euler line)", ok, f"{elapsed:.2f}s, identities={sorted(ident_sets)}")


# -- 4: nine-point circle -------------------------------------------------------


def test_criterion_4_nine_point_circle():
    _, report, elapsed = _discover_file("ninepoint.dsl")
    circles = [t.points for t in report.theorems if t.kind == "concyclic"]
    nine = ["D", "E", "F", "FA", "FB", "FC", "J", "K", "L"]
    ok = any(pts == nine for pts in circles) and elapsed < 60.0
    _report("4 (nine-point circle)", ok, f"{elapsed:.2f}s, circles={circles}")


# -- 5: contest problem (stretch) -----------------------------------------------


def test_criterion_5_contest_problem():
    _, report, elapsed = _discover_file(
        "imo2010.dsl", config=DiscoveryConfig(timeout_s=30.0)
    )
    entries = {(t.kind, tuple(t.points)) for t in report.theorems}
    wanted = {
        ("congruent", ("A", "P", "Q")),
        ("parallel", ("D", "E", "P", "Q")),
        ("concyclic", ("C", "D", "P", "Q")),
        ("concyclic", ("A", "F", "P", "Q")),
    }
    missing = wanted - entries
    unknowns = [r.statement for r in report.verdict_log if r.verdict == "unknown"]
    refuted = [r.statement for r in report.verdict_log if r.verdict == "refuted"]
    must_not_refute = {
        "congruent:A,P;A,Q",
        "parallel:D,P;E,Q",
        "concyclic:C,D,P,Q",
        "concyclic:A,F,P,Q",
    }
    wrong = must_not_refute & set(refuted)
    if missing and not wrong:
        print(f"ACCEPTANCE 5 (contest problem): WARNING missing={missing} unknowns={unknowns}")
        return
    ok = not wrong and not missing
    _report("5 (contest problem)", ok, f"{elapsed:.2f}s, found all four target theorems")


# -- 6: soundness fuzz -----------------------------------------------------------


def _exact_zero(v):
    return v == 0 or (isinstance(v, QuadExt) and v.is_zero())


def _exact_predicate(kind, pts):
    """Independent exact oracle over Q(sqrt(3)) coordinates."""
    if kind == "identity":
        (x1, y1), (x2, y2) = pts
        return _exact_zero(x1 - x2) and _exact_zero(y1 - y2)
    if kind == "collinear":
        (x1, y1), (x2, y2), (x3, y3) = pts
        return _exact_zero((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1))
    if kind == "concyclic":
        rows = [(x * x + y * y, x, y) for x, y in pts]
        total = QuadExt(0)
        sign = -1
        for i in range(4):
            m = [rows[j] for j in range(4) if j != i]
            det = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
            total = total + (det if sign > 0 else -det)
            sign = -sign
        return _exact_zero(total)
    if kind == "parallel":
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = pts
        return _exact_zero((x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3))
    if kind == "perpendicular":
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = pts
        return _exact_zero((x2 - x1) * (x4 - x3) + (y2 - y1) * (y4 - y3))
    if kind == "congruent":
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = pts
        d1 = (x2 - x1) * (x2 - x1) + (y2 - y1) * (y2 - y1)
        d2 = (x4 - x3) * (x4 - x3) + (y4 - y3) * (y4 - y3)
        return _exact_zero(d1 - d2)
    raise ValueError(kind)


def _atomic_facts(entry):
    """Class-level report entries broken into atomic checkable relations."""
    if entry.kind == "identity":
        for p, q in itertools.combinations(entry.points, 2):
            yield ("identity", (p, q))
    elif entry.kind == "collinear":
        for triple in itertools.combinations(entry.points, 3):
            yield ("collinear", triple)
    elif entry.kind == "concyclic":
        for quad in itertools.combinations(entry.points, 4):
            yield ("concyclic", quad)
    elif entry.kind == "parallel":
        for l1, l2 in itertools.combinations(entry.lines, 2):
            yield ("parallel", (l1[0], l1[1], l2[0], l2[1]))
    elif entry.kind == "perpendicular":
        for l1 in entry.axes[0]:
            for l2 in entry.axes[1]:
                yield ("perpendicular", (l1[0], l1[1], l2[0], l2[1]))
    elif entry.kind == "congruent":
        for s1, s2 in itertools.combinations(entry.segments, 2):
            yield ("congruent", (s1[0], s1[1], s2[0], s2[1]))


def test_criterion_6_soundness_fuzz():
    t0 = time.perf_counter()
    theorems_checked = 0
    runs = 0
    for seed in range(200):
        construction = random_construction(seed, max_points=6)
        target = construction.point_names()[-1]
        report = discover(construction, target, DiscoveryConfig(seed=seed))
        runs += 1
        if report.halted or not report.theorems:
            continue
        rng = random.Random(10_000 + seed)
        instances = []
        attempts = 0
        while len(instances) < 10 and attempts < 200:
            attempts += 1
            inst = random_exact_instance(construction, rng)
            if inst is not None:
                instances.append(inst)
        assert len(instances) == 10, f"seed {seed}: could not draw generic instances"
        for entry in report.theorems:
            for kind, names in _atomic_facts(entry):
                theorems_checked += 1
                for inst in instances:
                    pts = [inst[n] for n in names]
                    assert _exact_predicate(kind, pts), (
                        f"seed {seed}: reported {kind} over {names} fails exact "
                        f"evaluation"
                    )
    elapsed = time.perf_counter() - t0
    _report(
        "6 (soundness fuzz)",
        runs == 200,
        f"{elapsed:.1f}s, {runs} discoveries, {theorems_checked} atomic facts re-checked exactly",
    )


# -- 7: pruning equivalence --------------------------------------------------------


def test_criterion_7_pruning_equivalence():
    cases = [
        ("midline.dsl", None),
        ("parallelogram.dsl", None),
        ("hexagon.dsl", None),
    ]
    checked = 0
    for name, target in cases:
        prog = parse_dsl((GOLDEN / name).read_text())
        if len(prog.construction.visible_points()) > 7:
            continue
        tgt = target or prog.discover_targets[-1]
        pruned = discover(prog.construction, tgt, DiscoveryConfig(prune=True))
        brute = discover(prog.construction, tgt, DiscoveryConfig(prune=False))
        assert pruned.to_json(include_timings=False) == brute.to_json(include_timings=False), name
        checked += 1
    for seed in range(120, 132):
        c = random_construction(seed, max_points=7)
        tgt = c.point_names()[-1]
        pruned = discover(c, tgt, DiscoveryConfig(prune=True))
        brute = discover(c, tgt, DiscoveryConfig(prune=False))
        assert pruned.to_json(include_timings=False) == brute.to_json(
            include_timings=False
        ), f"seed {seed}"
        checked += 1
    _report("7 (pruning equivalence)", checked >= 12, f"{checked} constructions compared")


# -- 8: basis property suite ----------------------------------------------------------


def test_criterion_8_groebner_properties():
    rng = random.Random(881)
    spolys_checked = 0
    memberships = 0
    for trial in range(50):
        n = rng.randint(1, 3)
        gens = []
        while not gens:
            gens = [
                random_polynomial(rng, n, 2, rng.randint(1, 3))
                for _ in range(rng.randint(1, 3))
            ]
            gens = [g for g in gens if not g.is_zero()]
        order = DegRevLex(n)
        basis = buchberger(gens, order).basis
        for f, g in itertools.combinations(basis, 2):
            assert normal_form(s_polynomial(f, g, order), basis, order).is_zero()
            spolys_checked += 1
        if trial % 2 == 0:
            f = gens[0] * random_polynomial(rng, n, 1, 2)
            for g in gens[1:]:
                f = f + g * random_polynomial(rng, n, 1, 2)
            assert ideal_membership(f, gens, order)
        else:
            f = random_polynomial(rng, n, 2, 3)
            got = ideal_membership(f, gens, order)
            oracle = brute_force_membership(f, gens, degree_bound=5)
            if got:
                assert brute_force_membership(f, gens, degree_bound=6)
            else:
                assert not oracle
        memberships += 1
    _report(
        "8 (basis properties)",
        memberships == 50 and spolys_checked > 0,
        f"{memberships} ideals, {spolys_checked} S-polynomial reductions",
    )


# -- 9: n-gon scaling (optional performance) ---------------------------------------------


def test_criterion_9_ngon_benchmark():
    prog = parse_dsl((GOLDEN / "ngon12.dsl").read_text())
    t0 = time.perf_counter()
    report = discover(prog.construction, "A")
    elapsed = time.perf_counter() - t0
    record = {
        "runs": [
            {
                "n": 12,
                "seconds": round(elapsed, 3),
                "theorems": len(report.theorems),
                "bound_seconds": 600,
            },
            {
                "n": 20,
                "status": "not supported: the rotation coefficients for a regular "
                "20-gon lie outside Q(sqrt(3)), which is the field this "
                "engine's polygon steps algebraize over",
            },
        ]
    }
    bench_dir = REPO_ROOT / "benchmarks"
    bench_dir.mkdir(exist_ok=True)
    (bench_dir / "ngon.json").write_text(json.dumps(record, indent=2) + "\n")
    ok = elapsed < 600.0 and len(report.theorems) > 0
    _report("9 (12-gon benchmark)", ok, f"{elapsed:.2f}s, report in benchmarks/ngon.json")
