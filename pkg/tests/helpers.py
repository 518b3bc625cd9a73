"""Shared test utilities: independent oracles and generators.

Everything here is deliberately naive; these are the reference
implementations the fast code is checked against.
"""

import random
from fractions import Fraction
from itertools import combinations_with_replacement

from geodiscover.construction import (
    Construction,
    FootOfPerpendicular,
    FreePoint,
    IntersectLines,
    LineRef,
    Midpoint,
    PointOnLine,
    build,
)
from geodiscover.errors import DegenerateStepError
from geodiscover.polynomial import Polynomial


def solve_exact(rows, rhs):
    """Gaussian elimination over Fractions; returns one solution or None."""
    m = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None  # inconsistent
    solution = [Fraction(0)] * ncols
    for row_idx, c in enumerate(pivots):
        solution[c] = m[row_idx][ncols]
    return solution


def monomials_up_to(nvars, degree):
    out = []
    for total in range(degree + 1):
        for combo in combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


def brute_force_membership(f: Polynomial, gens, degree_bound: int) -> bool:
    """Ideal membership by solving for cofactors of bounded degree.

    f is a member iff f = sum c_{i,m} * m * g_i has a rational solution with
    all cofactor monomials m of total degree <= degree_bound.
    """
    n = f.nvars
    monos = monomials_up_to(n, degree_bound)
    columns = []
    for g in gens:
        for m in monos:
            prod = g.mul_term(1, m)
            columns.append(prod)
    target_monos = set(f.terms)
    for col in columns:
        target_monos |= set(col.terms)
    target_list = sorted(target_monos)
    rows = []
    rhs = []
    for e in target_list:
        rows.append([Fraction(col.terms.get(e, 0)) for col in columns])
        rhs.append(Fraction(f.terms.get(e, 0)))
    # transpose: unknowns are column multipliers
    if not columns:
        return f.is_zero()
    system = [[rows[i][j] for j in range(len(columns))] for i in range(len(target_list))]
    return solve_exact(system, rhs) is not None


def random_polynomial(rng, nvars, degree, terms, coeff_range=(-5, 5)):
    p = Polynomial.zero(nvars)
    monos = monomials_up_to(nvars, degree)
    for _ in range(terms):
        c = rng.randint(*coeff_range)
        if c == 0:
            continue
        e = rng.choice(monos)
        p = p + Polynomial(nvars, {e: c})
    return p


# ---------------------------------------------------------------------------
# random constructions for fuzzing
# ---------------------------------------------------------------------------

_NAMES = "ABCDEFGHJKLMNPQRSTUV"


def random_construction(seed: int, max_points: int = 6) -> Construction:
    """Random construction over the exactly-evaluable step vocabulary."""
    rng = random.Random(seed)
    attempts = 0
    while True:
        attempts += 1
        try:
            return _try_random_construction(rng, max_points)
        except (DegenerateStepError, ValueError):
            if attempts > 80:
                raise


def _try_random_construction(rng, max_points):
    n_free = rng.randint(2, 3)
    steps = []
    names = list(_NAMES)
    for _ in range(n_free):
        steps.append(
            FreePoint(
                names.pop(0),
                Fraction(rng.randint(-8, 8)),
                Fraction(rng.randint(-8, 8)),
            )
        )
    existing = [s.name for s in steps]
    if len({(s.x, s.y) for s in steps}) < n_free:
        raise ValueError("coincident free points")
    n_total = rng.randint(n_free + 1, max_points)
    while len(existing) < n_total:
        kind = rng.choice(["midpoint", "midpoint", "intersect", "foot", "on_line"])
        name = names.pop(0)
        if kind == "midpoint":
            a, b = rng.sample(existing, 2)
            steps.append(Midpoint(name, a, b))
        elif kind == "foot":
            p, a, b = rng.sample(existing, 3) if len(existing) >= 3 else (None, None, None)
            if p is None:
                names.insert(0, name)
                continue
            steps.append(FootOfPerpendicular(name, p, a, b))
        elif kind == "on_line":
            a, b = rng.sample(existing, 2)
            t = Fraction(rng.randint(-6, 6), rng.randint(2, 5))
            steps.append(PointOnLine(name, a, b, t))
        else:
            if len(existing) < 4:
                names.insert(0, name)
                continue
            a, b, c, d = rng.sample(existing, 4)
            steps.append(
                IntersectLines(name, LineRef("through", a, b), LineRef("through", c, d))
            )
        existing.append(name)
    return build(steps)
