"""Exact Groebner-basis engine and the symbolic proof decision procedure.

The prover decides whether a thesis polynomial vanishes on the variety of the
construction hypotheses "in general".  Free-point coordinates are treated as
parameters: the Rabinowitsch system ``H + {1 - z*T}`` is run under a block
order with the dependent variables dominant, and the thesis is accepted as
soon as the basis contains a nonzero polynomial in the parameters alone.
Components of the hypothesis variety that sit over a proper subvariety of the
parameter space (collapsed or otherwise degenerate configurations) cannot
contribute such an element, so the test captures truth on all generic
instances while ignoring degenerate ones.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .polynomial import BlockOrder, DegRevLex, MonomialOrder, Polynomial

Exponents = Tuple[int, ...]


class GBTimeout(Exception):
    """Raised when a basis computation exceeds its time budget."""


class GBCancelled(Exception):
    """Raised when an external cancellation signal fires."""


# ---------------------------------------------------------------------------
# internal sorted-term representation
# ---------------------------------------------------------------------------

# A term list is a list of (order_key, exponents, int_coeff) sorted descending.


def _to_terms(poly: Polynomial, order: MonomialOrder):
    prim = poly.primitive()
    items = [(order.key(e), e, c) for e, c in prim.terms.items()]
    items.sort(key=lambda t: t[0], reverse=True)
    return items


def _from_terms(terms, nvars: int) -> Polynomial:
    return Polynomial(nvars, {e: c for _, e, c in terms})


def _strip_content(terms):
    if not terms:
        return terms
    g = 0
    for _, _, c in terms:
        g = gcd(g, abs(c))
        if g == 1:
            break
    if terms[0][2] < 0:
        g = -g
    if g in (0, 1):
        return terms
    return [(k, e, c // g) for k, e, c in terms]


def _divides(lo: Exponents, hi: Exponents) -> bool:
    for a, b in zip(lo, hi):
        if a > b:
            return False
    return True


def _combine(a: int, p, b: int, q, shift: Exponents, order: MonomialOrder):
    """a*p - b*(x^shift * q), both inputs sorted descending."""
    out = []
    i = j = 0
    np_, nq = len(p), len(q)
    any_shift = any(shift)
    while i < np_ and j < nq:
        kp, ep, cp = p[i]
        kq, eq, cq = q[j]
        if any_shift:
            eq = tuple(x + y for x, y in zip(eq, shift))
            kq = order.key(eq)
        if kp > kq:
            out.append((kp, ep, a * cp))
            i += 1
        elif kq > kp:
            out.append((kq, eq, -b * cq))
            j += 1
        else:
            c = a * cp - b * cq
            if c:
                out.append((kp, ep, c))
            i += 1
            j += 1
    while i < np_:
        kp, ep, cp = p[i]
        out.append((kp, ep, a * cp))
        i += 1
    while j < nq:
        kq, eq, cq = q[j]
        if any_shift:
            eq = tuple(x + y for x, y in zip(eq, shift))
            kq = order.key(eq)
        out.append((kq, eq, -b * cq))
        j += 1
    return out


class _Entry:
    __slots__ = ("terms", "lm", "lc", "key")

    def __init__(self, terms):
        self.terms = terms
        self.key, self.lm, self.lc = terms[0]


def _reduce_terms(p, basis: Sequence[_Entry], order: MonomialOrder):
    """Full pseudo-reduction of p by the basis; returns a primitive remainder."""
    out = []
    agenda = p
    idx = 0
    steps = 0
    while idx < len(agenda):
        key0, e0, c0 = agenda[idx]
        reducer = None
        for g in basis:
            if _divides(g.lm, e0):
                reducer = g
                break
        if reducer is None:
            out.append((key0, e0, c0))
            idx += 1
            continue
        d = gcd(abs(c0), abs(reducer.lc))
        a = reducer.lc // d
        b = c0 // d
        if a < 0:
            a, b = -a, -b
        shift = tuple(x - y for x, y in zip(e0, reducer.lm))
        tail = _combine(a, agenda[idx + 1 :], b, reducer.terms[1:], shift, order)
        if a != 1 and out:
            out = [(k, e, a * c) for k, e, c in out]
        agenda = tail
        idx = 0
        steps += 1
        if steps % 24 == 0 and (out or agenda):
            # joint content strip: out and agenda must stay on a common scale
            g = 0
            for _, _, c in out:
                g = gcd(g, abs(c))
                if g == 1:
                    break
            if g != 1:
                for _, _, c in agenda:
                    g = gcd(g, abs(c))
                    if g == 1:
                        break
            if g > 1:
                out = [(k, e, c // g) for k, e, c in out]
                agenda = [(k, e, c // g) for k, e, c in agenda]
    return _strip_content(out)


def _s_pair_terms(f: _Entry, g: _Entry, order: MonomialOrder):
    lcm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
    shift_f = tuple(x - y for x, y in zip(lcm, f.lm))
    shift_g = tuple(x - y for x, y in zip(lcm, g.lm))
    d = gcd(abs(f.lc), abs(g.lc))
    a = g.lc // d
    b = f.lc // d
    pf = [(order.key(tuple(x + y for x, y in zip(e, shift_f))), tuple(x + y for x, y in zip(e, shift_f)), c) for _, e, c in f.terms]
    return _combine(a, pf, b, g.terms, shift_g, order)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or DegRevLex(f.nvars)
    sp = _s_pair_terms(_Entry(_to_terms(f, order)), _Entry(_to_terms(g, order)), order)
    return _from_terms(sp, f.nvars)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None) -> Polynomial:
    """Exact multivariate division remainder: f - r lies in <basis>, and no
    term of r is divisible by a basis leading monomial."""
    order = order or DegRevLex(f.nvars)
    if f.is_zero():
        return f
    entries = []
    for g in basis:
        if g.is_zero():
            continue
        lm = order.leading(g.terms)
        entries.append((lm, Fraction(g.terms[lm]), g))
    remainder: Dict[Exponents, Fraction] = {}
    work: Dict[Exponents, Fraction] = {e: Fraction(c) for e, c in f.terms.items()}
    while work:
        e0 = max(work, key=order.key)
        c0 = work[e0]
        hit = None
        for lm, lc, g in entries:
            if _divides(lm, e0):
                hit = (lm, lc, g)
                break
        if hit is None:
            remainder[e0] = remainder.get(e0, Fraction(0)) + c0
            del work[e0]
            continue
        lm, lc, g = hit
        shift = tuple(x - y for x, y in zip(e0, lm))
        factor = c0 / lc
        for eg, cg in g.terms.items():
            e = tuple(x + y for x, y in zip(eg, shift))
            v = work.get(e, Fraction(0)) - factor * Fraction(cg)
            if v:
                work[e] = v
            else:
                work.pop(e, None)
    return Polynomial(f.nvars, {e: c for e, c in remainder.items() if c})


@dataclass
class GBRun:
    basis: List[Polynomial]
    stopped_early: bool = False
    witness: Optional[Polynomial] = None


def _update_pairs(G: List[int], B: List[Tuple[int, int]], ih: int, store: List[_Entry]):
    """Gebauer-Moeller pair update: applies the coprime-leading-term and chain
    criteria when feeding a new element into the pair queue."""
    mh = store[ih].lm

    def lcm(a: Exponents, b: Exponents) -> Exponents:
        return tuple(max(x, y) for x, y in zip(a, b))

    def mul(a: Exponents, b: Exponents) -> Exponents:
        return tuple(x + y for x, y in zip(a, b))

    C = list(G)
    D: List[int] = []
    while C:
        ig = C.pop(0)
        mg = store[ig].lm
        lcm_hg = lcm(mh, mg)
        if mul(mh, mg) == lcm_hg:
            D.append(ig)
            continue
        covered = False
        for other in C + D:
            if _divides(lcm(mh, store[other].lm), lcm_hg):
                covered = True
                break
        if not covered:
            D.append(ig)
    E = [ig for ig in D if mul(mh, store[ig].lm) != lcm(mh, store[ig].lm)]

    B_new: List[Tuple[int, int]] = []
    for (i1, i2) in B:
        l12 = lcm(store[i1].lm, store[i2].lm)
        if (not _divides(mh, l12)) or lcm(store[i1].lm, mh) == l12 or lcm(store[i2].lm, mh) == l12:
            B_new.append((i1, i2))
    B_new.extend((ih, ig) for ig in E)

    G_new = [ig for ig in G if not _divides(mh, store[ig].lm)]
    G_new.append(ih)
    return G_new, B_new


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: float | None = None,
    early_stop: Callable[[Exponents], bool] | None = None,
    cancel: Callable[[], bool] | None = None,
) -> GBRun:
    """Buchberger's algorithm with normal pair selection.

    Raises :class:`GBTimeout` when the budget runs out (the partial basis is
    discarded) and :class:`GBCancelled` on external cancellation; both are
    checked between S-pair reductions.  When ``early_stop`` matches the
    leading monomial of a (reduced, nonzero) basis element the run returns
    immediately with that element as witness.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        return GBRun(basis=[])
    nvars = gens[0].nvars
    order = order or DegRevLex(nvars)
    deadline = None if budget is None else time.perf_counter() + budget

    store: List[_Entry] = []
    seen = set()
    for g in sorted(gens, key=lambda p: order.key(order.leading(p.terms))):
        terms = _to_terms(g, order)
        key = tuple((e, c) for _, e, c in terms)
        if key in seen:
            continue
        seen.add(key)
        store.append(_Entry(terms))

    if early_stop is not None:
        for entry in store:
            if early_stop(entry.lm):
                return GBRun(basis=[_from_terms(entry.terms, nvars)], stopped_early=True,
                             witness=_from_terms(entry.terms, nvars))

    G: List[int] = []
    B: List[Tuple[int, int]] = []
    for ih in range(len(store)):
        G, B = _update_pairs(G, B, ih, store)

    def lcm_key(pair):
        l = tuple(max(a, b) for a, b in zip(store[pair[0]].lm, store[pair[1]].lm))
        return order.key(l)

    while B:
        if deadline is not None and time.perf_counter() > deadline:
            raise GBTimeout()
        if cancel is not None and cancel():
            raise GBCancelled()
        best = min(range(len(B)), key=lambda i: lcm_key(B[i]))
        i1, i2 = B.pop(best)
        sp = _s_pair_terms(store[i1], store[i2], order)
        if not sp:
            continue
        red = _reduce_terms(sp, [store[i] for i in G], order)
        if not red:
            continue
        entry = _Entry(red)
        store.append(entry)
        ih = len(store) - 1
        if early_stop is not None and early_stop(entry.lm):
            return GBRun(basis=[_from_terms(store[i].terms, nvars) for i in G],
                         stopped_early=True, witness=_from_terms(red, nvars))
        G, B = _update_pairs(G, B, ih, store)

    # inter-reduce for a unique, minimal output
    final = sorted(G, key=lambda i: order.key(store[i].lm))
    reduced: List[_Entry] = []
    for pos, i in enumerate(final):
        others = [store[j] for j in final[:pos] + final[pos + 1 :]]
        red = _reduce_terms(store[i].terms, others, order)
        if red:
            reduced.append(_Entry(red))
    # a second pass against the already-reduced set yields the reduced basis
    result: List[Polynomial] = []
    for pos, entry in enumerate(reduced):
        others = reduced[:pos] + reduced[pos + 1 :]
        red = _reduce_terms(entry.terms, others, order)
        if red:
            result.append(_from_terms(red, nvars).primitive())
    result.sort(key=lambda p: order.key(order.leading(p.terms)))
    return GBRun(basis=result)


def ideal_membership(
    f: Polynomial,
    generators: Sequence[Polynomial],
    order: MonomialOrder | None = None,
    budget: float | None = None,
) -> bool:
    """Plain (non-radical) ideal membership via a Groebner basis."""
    order = order or DegRevLex(f.nvars)
    run = buchberger(generators, order, budget)
    if not run.basis:
        return f.is_zero()
    return normal_form(f, run.basis, order).is_zero()


# ---------------------------------------------------------------------------
# statement decision
# ---------------------------------------------------------------------------


def param_normal_form(
    f: Polynomial,
    basis: Sequence[Polynomial],
    dep_vars: Set[int],
    order: MonomialOrder,
) -> Polynomial:
    """Normal form of f modulo a product-order basis, working over the
    fraction field of the parameter (non-dep) variables.

    Reduction matches dependent-variable monomials only; coefficient
    divisions in the parameter field are avoided by cross-multiplying with
    the reducer's parameter-polynomial leading coefficient, so some unit
    multiple of the true normal form is returned.  Zero is returned iff f
    lies in the extended ideal.
    """
    n = f.nvars

    def dep_part(e):
        return tuple(ei if i in dep_vars else 0 for i, ei in enumerate(e))

    entries = []
    for g in basis:
        lm = order.leading(g.terms)
        D = dep_part(lm)
        coeff_terms = {}
        tail_terms = {}
        for e, c in g.terms.items():
            if dep_part(e) == D:
                coeff_terms[tuple(a - b for a, b in zip(e, D))] = c
            else:
                tail_terms[e] = c
        entries.append((D, Polynomial(n, coeff_terms), Polynomial(n, tail_terms)))
        if not any(D):
            # a parameter-only basis element: the extended ideal is trivial
            return Polynomial.zero(n)

    work = Polynomial(n, dict(f.terms))
    remainder = Polynomial.zero(n)
    steps = 0
    while work.terms:
        groups: Dict[tuple, Dict] = {}
        for e, c in work.terms.items():
            groups.setdefault(dep_part(e), {})[e] = c
        M = max(groups, key=order.key)
        hit = None
        for D, C, tail in entries:
            if _divides(D, M):
                hit = (D, C, tail)
                break
        block = Polynomial(n, groups[M])
        if hit is None:
            remainder = remainder + block
            work = work - block
            continue
        D, C, tail = hit
        shift = tuple(a - b for a, b in zip(M, D))
        coeff = Polynomial(
            n, {tuple(a - b for a, b in zip(e, dep_part(e))): c for e, c in block.terms.items()}
        )
        work = C * (work - block) - coeff * tail.mul_term(1, shift)
        remainder = C * remainder
        steps += 1
        if steps % 8 == 0 and (work.terms or remainder.terms):
            # joint content strip keeps work and remainder on a common scale
            g = 0
            ok = True
            for c in list(work.terms.values()) + list(remainder.terms.values()):
                if not isinstance(c, int):
                    ok = False
                    break
                g = gcd(g, abs(c))
                if g == 1:
                    break
            if ok and g > 1:
                work = Polynomial(n, {e: c // g for e, c in work.terms.items()})
                remainder = Polynomial(n, {e: c // g for e, c in remainder.terms.items()})
    return remainder


@dataclass
class ProofVerdict:
    status: str  # "proved" | "refuted" | "unknown"
    reason: Optional[str] = None  # for unknown: "timeout" | "inconclusive"
    certificate: Optional[str] = None
    counterexample: Optional[dict] = None

    @property
    def proved(self) -> bool:
        return self.status == "proved"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    def exit_code(self) -> int:
        return {"proved": 0, "refuted": 1}.get(self.status, 2)


def _split_linear(p: Polynomial, x: int) -> Tuple[Polynomial, Polynomial]:
    """p = c*x + r with x-degree 1: returns (c, r), x removed from both."""
    c_terms = {}
    r_terms = {}
    for e, co in p.terms.items():
        if e[x]:
            ne = tuple(v if i != x else 0 for i, v in enumerate(e))
            c_terms[ne] = co
        else:
            r_terms[e] = co
    return Polynomial(p.nvars, c_terms), Polynomial(p.nvars, r_terms)


def _substitute_unit_linear(
    p: Polynomial, x: int, c: Polynomial, neg_r: Polynomial
) -> Polynomial:
    """Image of p under x -> -r/c with denominators cleared by the unit c:
    for p = sum p_k x^k of x-degree d this is sum p_k * (-r)^k * c^(d-k)."""
    d = p.degree_in(x)
    if d == 0:
        return p
    by_deg: Dict[int, Dict] = {}
    for e, co in p.terms.items():
        k = e[x]
        ne = tuple(v if i != x else 0 for i, v in enumerate(e))
        by_deg.setdefault(k, {})[ne] = by_deg.get(k, {}).get(ne, 0) + co
    num_pow = [Polynomial.constant(1, p.nvars)]
    den_pow = [Polynomial.constant(1, p.nvars)]
    for _ in range(d):
        num_pow.append(num_pow[-1] * neg_r)
        den_pow.append(den_pow[-1] * c)
    out = Polynomial.zero(p.nvars)
    for k, terms in by_deg.items():
        out = out + Polynomial(p.nvars, terms) * num_pow[k] * den_pow[d - k]
    return out


def _eliminate_linear(
    hypotheses: List[Polynomial],
    theses: List[Polynomial],
    eliminable: Set[int],
    sqrt_var: Optional[int],
    free_vars: Set[int],
) -> Tuple[List[Polynomial], List[Polynomial]]:
    """Remove dependent variables defined linearly by a hypothesis.

    A hypothesis c*x + r with r free of x defines x = -r/c.  Substituting is
    sound whenever c is a unit in the coefficient field: a nonzero rational,
    or (working over the fraction field of the parameters) any nonzero
    polynomial in free variables only.  Denominators are cleared by scaling
    with c, which multiplies generators and theses by a unit and leaves the
    decision unchanged.  Powers of the sqrt auxiliary are folded via
    s^2 -> 3, subtracting multiples of the kept generator s^2 - 3.
    """
    hyps = list(hypotheses)
    theses = list(theses)
    nvars = hyps[0].nvars if hyps else (theses[0].nvars if theses else 0)
    unit_vars = set(free_vars)
    if sqrt_var is not None:
        unit_vars.discard(sqrt_var)
    size_cap = 900  # skip substitutions that would expand any polynomial past this

    def post(p: Polynomial) -> Polynomial:
        if (
            sqrt_var is not None
            and p.degree_in(sqrt_var) >= 2
            and (p.variables_used() - {sqrt_var})
        ):
            p = p.reduce_square(sqrt_var, 3)
        return p.primitive()

    banned: Set[int] = set()
    while True:
        best = None  # (complexity, hyp index, var, c, neg_r)
        for hi, h in enumerate(hyps):
            for x in sorted(h.variables_used()):
                if x not in eliminable or x in banned or h.degree_in(x) != 1:
                    continue
                c, r = _split_linear(h, x)
                c_vars = c.variables_used()
                if not c_vars <= unit_vars:
                    continue
                cost = (len(c_vars) > 0, len(c.terms) + len(r.terms))
                if best is None or cost < best[0]:
                    best = (cost, hi, x, c, -r)
        if best is None:
            break
        _, hi, x, c, neg_r = best
        new_hyps = []
        new_theses = []
        too_big = False
        for j, other in enumerate(hyps):
            if j == hi:
                continue
            sub = post(_substitute_unit_linear(other, x, c, neg_r))
            if len(sub.terms) > size_cap:
                too_big = True
                break
            if not sub.is_zero():
                new_hyps.append(sub)
        if not too_big:
            for t in theses:
                sub = post(_substitute_unit_linear(t, x, c, neg_r))
                if len(sub.terms) > size_cap:
                    too_big = True
                    break
                new_theses.append(sub)
        if too_big:
            banned.add(x)
            continue
        hyps = new_hyps
        theses = new_theses
        eliminable.discard(x)
    return hyps, theses


def _compress(polys: List[Polynomial], free_vars: Set[int]):
    """Drop unused variable slots; returns (polys, dep_idx, free_idx, backmap)."""
    used = set()
    for p in polys:
        used |= p.variables_used()
    backmap = sorted(used)
    index = {old: new for new, old in enumerate(backmap)}
    n = len(backmap)
    out = []
    for p in polys:
        terms = {}
        for e, c in p.terms.items():
            ne = [0] * n
            for old, new in index.items():
                ne[new] = e[old]
            terms[tuple(ne)] = c
        out.append(Polynomial(n, terms))
    dep = [index[v] for v in backmap if v not in free_vars]
    free = [index[v] for v in backmap if v in free_vars]
    return out, sorted(dep), sorted(free), backmap


def decide(
    hypotheses: Sequence[Polynomial],
    theses: Sequence[Polynomial],
    free_vars: Set[int] | None = None,
    budget: float = 5.0,
    counterexample_fn: Callable[[], Optional[dict]] | None = None,
    cancel: Callable[[], bool] | None = None,
    sqrt_var: Optional[int] = None,
) -> ProofVerdict:
    """Decide whether every thesis vanishes on the hypothesis variety in general.

    Proved requires, for each thesis T, a nonzero parameter-only element of
    <H, 1 - z*T> (with all variables dependent this degenerates to literal
    radical membership, i.e. 1 in the ideal).  Refuted comes from an exact
    counterexample when the construction is exactly evaluable, otherwise from
    completed non-membership.  Everything else is Unknown.
    """
    t0 = time.perf_counter()
    deadline = t0 + budget
    free_vars = set(free_vars or ())

    theses = [t for t in theses]
    if all(t.is_zero() for t in theses):
        return ProofVerdict("proved", certificate="theses identically zero")

    if counterexample_fn is not None:
        ce = counterexample_fn()
        if ce is not None:
            return ProofVerdict("refuted", certificate="exact counterexample", counterexample=ce)

    hyps, theses = _eliminate_linear(
        list(hypotheses),
        list(theses),
        set(range(theses[0].nvars)) - free_vars,
        sqrt_var,
        free_vars,
    )

    live = [t for t in theses if not t.is_zero()]
    if not live:
        return ProofVerdict("proved", certificate="theses vanish after elimination")

    polys, dep, free, backmap = _compress([p.primitive() for p in hyps + live], free_vars)
    n = len(backmap)
    comp_hyps = polys[: len(hyps)]
    comp_theses = polys[len(hyps) :]
    order = BlockOrder(dep, free)
    dep_set = set(dep)

    # Groebner basis of the hypothesis ideal alone; each thesis is then a
    # single normal-form reduction over the parameter field.  Constructions
    # generate radical hypothesis ideals except in contrived cases, so a
    # nonzero normal form goes to the Rabinowitsch check for the final word.
    hyp_basis: Optional[List[Polynomial]] = None
    if comp_hyps:
        try:
            run = buchberger(
                comp_hyps, order, budget=deadline - time.perf_counter(), cancel=cancel
            )
            hyp_basis = run.basis
        except GBTimeout:
            hyp_basis = None
        except GBCancelled:
            return ProofVerdict("unknown", reason="cancelled")

    proved_count = 0
    for thesis in comp_theses:
        reduced_to_zero = False
        if hyp_basis is not None:
            if not hyp_basis:
                reduced_to_zero = thesis.is_zero()
            else:
                r = param_normal_form(thesis, hyp_basis, dep_set, order)
                reduced_to_zero = r.is_zero()
        if reduced_to_zero:
            proved_count += 1
            continue

        # Rabinowitsch: d(u) in <H, 1 - z*T> certifies vanishing on every
        # generically-instantiated component.
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            return ProofVerdict("unknown", reason="timeout")
        gens = [p.extend(1) for p in comp_hyps]
        t_ext = thesis.extend(1)
        z = Polynomial.variable(n, n + 1)
        one = Polynomial.constant(1, n + 1)
        gens.append(one - (z * t_ext))
        dep_ext = [n] + dep
        z_order = BlockOrder(dep_ext, free)
        dep_ext_set = set(dep_ext)

        def param_only(lm: Exponents) -> bool:
            return all(lm[i] == 0 for i in dep_ext_set)

        try:
            run = buchberger(gens, z_order, budget=remaining, early_stop=param_only, cancel=cancel)
        except GBTimeout:
            return ProofVerdict("unknown", reason="timeout")
        except GBCancelled:
            return ProofVerdict("unknown", reason="cancelled")
        witness = run.witness
        if witness is None:
            for p in run.basis:
                if param_only(z_order.leading(p.terms)):
                    witness = p
                    break
        if witness is None:
            if counterexample_fn is not None:
                return ProofVerdict("unknown", reason="inconclusive")
            return ProofVerdict(
                "refuted",
                certificate="thesis is not generally implied (no parameter-only element)",
            )
        proved_count += 1
    return ProofVerdict("proved", certificate=f"{proved_count} vanishing certificate(s)")


def decide_statement(translation, theses: Sequence[Polynomial], budget: float = 5.0,
                     counterexample_fn: Callable[[], Optional[dict]] | None = None,
                     cancel: Callable[[], bool] | None = None) -> ProofVerdict:
    """Decide a statement against an algebraic construction translation.

    The translation provides the hypothesis ideal, which variables are free
    parameters, and the index of the sqrt(3) auxiliary when present.
    """
    return decide(
        translation.hypotheses,
        theses,
        free_vars=translation.free_var_indices(),
        budget=budget,
        counterexample_fn=counterexample_fn,
        cancel=cancel,
        sqrt_var=translation.sqrt_var_index(),
    )
