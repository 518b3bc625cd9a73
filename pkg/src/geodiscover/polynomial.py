"""Sparse multivariate polynomials with exact rational coefficients.

Terms map an exponent vector (one slot per variable) to a nonzero coefficient.
Coefficients are Python ints or :class:`fractions.Fraction`; the Groebner
layer normalizes to primitive integer form, everything else works with either.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Sequence, Tuple

Exponents = Tuple[int, ...]


class MonomialOrder:
    """Total order on monomials, exposed as a sort key over exponent vectors.

    ``key(e1) < key(e2)`` iff the monomial with exponents ``e1`` is smaller.
    """

    def key(self, exps: Exponents):
        raise NotImplementedError

    def leading(self, terms: Dict[Exponents, object]) -> Exponents:
        return max(terms, key=self.key)


class DegRevLex(MonomialOrder):
    """Degree reverse lexicographic order.

    ``perm`` lists variable indices from most to least significant; defaults
    to the natural order.
    """

    def __init__(self, nvars: int, perm: Sequence[int] | None = None):
        self.nvars = nvars
        self.perm = tuple(perm) if perm is not None else tuple(range(nvars))
        self._rev = tuple(reversed(self.perm))

    def key(self, exps: Exponents):
        return (sum(exps), tuple(-exps[i] for i in self._rev))


class Lex(MonomialOrder):
    def __init__(self, nvars: int, perm: Sequence[int] | None = None):
        self.nvars = nvars
        self.perm = tuple(perm) if perm is not None else tuple(range(nvars))

    def key(self, exps: Exponents):
        return tuple(exps[i] for i in self.perm)


class BlockOrder(MonomialOrder):
    """Product order: compare the ``major`` variable block first.

    Any monomial containing a major variable is larger than any monomial in
    the minor variables alone, which gives the usual elimination property:
    a Groebner basis element whose leading monomial is free of major
    variables lies entirely in the minor subring.
    """

    def __init__(self, major: Sequence[int], minor: Sequence[int]):
        self.major = tuple(major)
        self.minor = tuple(minor)
        self._rev_major = tuple(reversed(self.major))
        self._rev_minor = tuple(reversed(self.minor))

    def key(self, exps: Exponents):
        major_deg = sum(exps[i] for i in self.major)
        minor_deg = sum(exps[i] for i in self.minor)
        return (
            (major_deg, tuple(-exps[i] for i in self._rev_major)),
            (minor_deg, tuple(-exps[i] for i in self._rev_minor)),
        )


class Polynomial:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exponents, object] | None = None):
        self.nvars = nvars
        self.terms: Dict[Exponents, object] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[e] = c

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Polynomial":
        return Polynomial(nvars)

    @staticmethod
    def constant(c, nvars: int) -> "Polynomial":
        return Polynomial(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(index: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[index] = 1
        return Polynomial(nvars, {tuple(e): 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return 0
        return max(e[var] for e in self.terms)

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used.add(i)
        return used

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.nvars != other.nvars or len(self.terms) != len(other.terms):
            return False
        for e, c in self.terms.items():
            if other.terms.get(e) != c:
                return False
        return True

    def __hash__(self):
        return hash((self.nvars, frozenset((e, Fraction(c)) for e, c in self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Polynomial(self.nvars, res)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) - c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Polynomial(self.nvars, res)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        res: Dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = res.get(e, 0) + c1 * c2
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        return Polynomial(self.nvars, res)

    def scale(self, c) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial(self.nvars, {e: co * c for e, co in self.terms.items()})

    def mul_term(self, c, exps: Exponents) -> "Polynomial":
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): co * c for e, co in self.terms.items()},
        )

    def pow(self, k: int) -> "Polynomial":
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- evaluation / substitution -------------------------------------------

    def evaluate(self, values: Sequence):
        """Evaluate at a full assignment; values must support ring arithmetic."""
        total = None
        for e, c in self.terms.items():
            term = c
            for i, d in enumerate(e):
                for _ in range(d):
                    term = term * values[i]
            total = term if total is None else total + term
        if total is None:
            return 0
        return total

    def substitute_var(self, var: int, replacement: "Polynomial") -> "Polynomial":
        """Replace one variable by a polynomial over the same variable slots."""
        if self.degree_in(var) == 0:
            return self
        powers = [Polynomial.constant(1, self.nvars)]
        for _ in range(self.degree_in(var)):
            powers.append(powers[-1] * replacement)
        res = Polynomial.zero(self.nvars)
        for e, c in self.terms.items():
            d = e[var]
            rest = list(e)
            rest[var] = 0
            res = res + powers[d].mul_term(c, tuple(rest))
        return res

    def reduce_square(self, var: int, value) -> "Polynomial":
        """Rewrite var^2 -> value (used for the sqrt auxiliary, var^2 = 3)."""
        res: Dict[Exponents, object] = {}
        for e, c in self.terms.items():
            d = e[var]
            if d >= 2:
                c = c * (value ** (d // 2))
                e = tuple(x if i != var else d % 2 for i, x in enumerate(e))
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Polynomial(self.nvars, res)

    def extend(self, extra: int) -> "Polynomial":
        """Append ``extra`` fresh variables (exponent 0 everywhere)."""
        pad = (0,) * extra
        return Polynomial(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    # -- normalization --------------------------------------------------------

    def primitive(self) -> "Polynomial":
        """Integer-primitive associate: content removed, leading sign positive.

        The leading term for sign normalization is the largest exponent tuple
        in plain tuple order, which is order-independent and deterministic.
        """
        if not self.terms:
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            f = Fraction(c)
            num_gcd = gcd(num_gcd, abs(f.numerator))
            den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
        factor = Fraction(den_lcm, num_gcd)
        lead = max(self.terms)
        if Fraction(self.terms[lead]) < 0:
            factor = -factor
        out = {}
        for e, c in self.terms.items():
            v = Fraction(c) * factor
            out[e] = int(v)
        return Polynomial(self.nvars, out)

    # -- formatting -------------------------------------------------------------

    def format(self, names: Sequence[str], order: MonomialOrder | None = None) -> str:
        if not self.terms:
            return "0"
        order = order or DegRevLex(self.nvars)
        parts = []
        for e in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, d in enumerate(e):
                if d == 1:
                    factors.append(names[i])
                elif d > 1:
                    factors.append(f"{names[i]}^{d}")
            body = "*".join(factors)
            cf = Fraction(c)
            mag = abs(cf)
            if not body:
                piece = str(mag)
            elif mag == 1:
                piece = body
            else:
                piece = f"{mag}*{body}"
            sign = "-" if cf < 0 else "+"
            parts.append((sign, piece))
        first_sign, first_piece = parts[0]
        out = ("-" if first_sign == "-" else "") + first_piece
        for sign, piece in parts[1:]:
            out += f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"Polynomial({self.format([f'v{i}' for i in range(self.nvars)])})"
