"""Groebner engine: division, bases, membership, statement decisions."""

import random
import time

import pytest

from geodiscover.groebner import (
    GBTimeout,
    buchberger,
    decide,
    ideal_membership,
    normal_form,
    param_normal_form,
    s_polynomial,
)
from geodiscover.polynomial import BlockOrder, DegRevLex, Lex, Polynomial

from helpers import brute_force_membership, random_polynomial


def _vars(n):
    return [Polynomial.variable(i, n) for i in range(n)]


def test_normal_form_textbook():
    x, y = _vars(2)
    # x^2*y = y*(x^2 - y) + y^2
    r = normal_form(x * x * y, [x * x - y])
    assert r == y * y


def test_normal_form_zero_and_self():
    x, = _vars(1)
    one = Polynomial.constant(1, 1)
    assert normal_form(Polynomial.zero(1), [x - one]).is_zero()
    assert normal_form(x - one, [x - one]).is_zero()


def test_normal_form_difference_in_ideal():
    # f - nf(f) must reduce to zero again (it lies in the ideal)
    x, y = _vars(2)
    basis = [x * x - y, x * y - x]
    f = x * x * x + y * y
    r = normal_form(f, basis)
    assert normal_form(f - r, basis).is_zero()


def test_buchberger_redundant_generator():
    x, = _vars(1)
    one = Polynomial.constant(1, 1)
    run = buchberger([x * x - one, x - one])
    assert [p.format(["x"]) for p in run.basis] == ["x - 1"]


def test_buchberger_single_generator():
    x, = _vars(1)
    one = Polynomial.constant(1, 1)
    run = buchberger([x - one])
    assert [p.format(["x"]) for p in run.basis] == ["x - 1"]


def test_buchberger_lex_circle_line():
    x, y = _vars(2)
    one = Polynomial.constant(1, 2)
    run = buchberger([x * x + y * y - one, x - y], Lex(2))
    rendered = {p.format(["x", "y"]) for p in run.basis}
    assert "2*y^2 - 1" in rendered


def test_s_polynomials_of_basis_reduce_to_zero():
    x, y, z = _vars(3)
    one = Polynomial.constant(1, 3)
    gens = [x * y - z, y * y - one, x * z - y]
    order = DegRevLex(3)
    run = buchberger(gens, order)
    basis = run.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            sp = s_polynomial(basis[i], basis[j], order)
            assert normal_form(sp, basis, order).is_zero()


def test_membership_matches_brute_force():
    rng = random.Random(20240817)
    checked_member = checked_non = 0
    for trial in range(50):
        n = rng.randint(1, 3)
        gens = [random_polynomial(rng, n, 2, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        if trial % 2 == 0:
            # known member: a random small combination of the generators
            f = Polynomial.zero(n)
            for g in gens:
                f = f + g * random_polynomial(rng, n, 1, 2)
            expect = True
        else:
            f = random_polynomial(rng, n, 2, 3)
            expect = None  # unknown a priori
        got = ideal_membership(f, gens)
        oracle = brute_force_membership(f, gens, degree_bound=4)
        if expect is True:
            assert got, "known combination must be a member"
            checked_member += 1
        if got:
            assert brute_force_membership(f, gens, degree_bound=6)
        else:
            assert not oracle, "oracle found a certificate the basis engine missed"
            checked_non += 1
    assert checked_member > 10 and checked_non > 5


def test_timeout_raises():
    # katsura-like dense system too big for a microscopic budget
    rng = random.Random(7)
    n = 4
    gens = [random_polynomial(rng, n, 3, 6) for _ in range(4)]
    gens = [g for g in gens if not g.is_zero()]
    with pytest.raises(GBTimeout):
        buchberger(gens, DegRevLex(n), budget=1e-5)


def test_param_normal_form_linear_system():
    # dep x defined by u*x - 1: x reduces to a parameter expression, and
    # u^2*x^2 - 1 = (u*x-1)(u*x+1) reduces to zero
    u, x = _vars(2)
    one = Polynomial.constant(1, 2)
    order = BlockOrder([1], [0])
    basis = buchberger([u * x - one], order).basis
    assert param_normal_form(u * u * x * x - one, basis, {1}, order).is_zero()
    r = param_normal_form(x, basis, {1}, order)
    assert not r.is_zero()  # x alone is not in the ideal


# -- decide ----------------------------------------------------------------


def test_decide_radical_membership_example():
    x, = _vars(1)
    one = Polynomial.constant(1, 1)
    v = decide([x - one], [x * x - one], free_vars=set(), budget=5.0)
    assert v.proved


def test_decide_refuted_without_oracle():
    x, y = _vars(2)
    v = decide([x * x - y], [x - y], free_vars={0}, budget=5.0)
    assert v.refuted


def test_decide_counterexample_oracle_wins():
    x, = _vars(1)

    def oracle():
        return {"A": ("1", "2")}

    v = decide([], [x], free_vars=set(), budget=5.0, counterexample_fn=oracle)
    assert v.refuted
    assert v.counterexample == {"A": ("1", "2")}


def test_decide_inconclusive_when_oracle_finds_nothing():
    # thesis not in the radical, but the (lying) oracle reports no instance:
    # with an oracle attached the engine refuses to call it refuted
    x, = _vars(1)
    v = decide([], [x], free_vars=set(), budget=5.0, counterexample_fn=lambda: None)
    assert v.status == "unknown"
    assert v.reason == "inconclusive"


def test_decide_timeout_reports_unknown():
    rng = random.Random(3)
    n = 5
    gens = [random_polynomial(rng, n, 3, 7) for _ in range(5)]
    gens = [g for g in gens if not g.is_zero()]
    thesis = random_polynomial(rng, n, 2, 5)
    v = decide(gens, [thesis], free_vars=set(), budget=1e-5)
    assert v.status == "unknown"
    assert v.reason == "timeout"


def test_decide_budget_monotonicity():
    # growing the budget may resolve unknown, but never flips a settled verdict
    x, = _vars(1)
    one = Polynomial.constant(1, 1)
    settled = decide([x - one], [x * x - one], free_vars=set(), budget=0.5)
    bigger = decide([x - one], [x * x - one], free_vars=set(), budget=10.0)
    assert settled.status == bigger.status == "proved"


def test_decide_parallelogram_diagonals_bisect():
    # the classic reducible-variety case: the degenerate collinear component
    # must not block the proof when free coordinates are parameters
    n = 8
    v = [Polynomial.variable(i, n) for i in range(n)]
    h1 = (v[6] - v[4]) * (v[3] - v[1]) - (v[7] - v[5]) * (v[2] - v[0])
    h2 = (v[6] - v[0]) * (v[5] - v[3]) - (v[7] - v[1]) * (v[4] - v[2])
    t1 = v[0] + v[4] - v[2] - v[6]
    t2 = v[1] + v[5] - v[3] - v[7]
    verdict = decide([h1, h2], [t1, t2], free_vars={0, 1, 2, 3, 4, 5}, budget=10.0)
    assert verdict.proved


def test_decide_statement_wrapper():
    from geodiscover import statements as st
    from geodiscover.algebraize import algebraize_construction, algebraize_statement
    from geodiscover.dsl import parse_dsl
    from geodiscover.groebner import decide_statement

    c = parse_dsl(
        "point A 0 0\npoint B 4 0\npoint C 2 2\nmidpoint D B C\nmidpoint E A C\n"
    ).construction
    tr = algebraize_construction(c)
    theses = algebraize_statement(st.parallel(("D", "E"), ("A", "B")), tr)
    assert decide_statement(tr, theses, budget=5.0).proved
    theses_false = algebraize_statement(st.identity("D", "E"), tr)
    assert decide_statement(tr, theses_false, budget=5.0).refuted
