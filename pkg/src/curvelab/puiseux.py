"""Plane curve germs given by Puiseux parametrizations.

A branch is stored as ``(w**n, sum a_i w**i)``; its ``n`` sheets are the
series ``y_k(x) = sum a_i zeta_n**(k*i) x**(i/n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .scalar import (
    ZERO,
    GaussianRational,
    RootOfUnityTag,
    TaggedScalar,
    format_rational,
    tagged_equal,
)


class CurveError(ValueError):
    """Input describes something that is not a valid reduced curve germ."""


class NonReducedError(CurveError):
    def __init__(self, msg="non-reduced curve"):
        super().__init__(msg)


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug."""


@dataclass(frozen=True)
class Branch:
    """Primitive Puiseux parametrization ``(w**n, sum a_i w**i)``.

    ``terms`` is a tuple of ``(i, a_i)`` with strictly increasing ``i >= n``
    and nonzero Gaussian rational ``a_i``.
    """

    n: int
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple((int(i), GaussianRational.coerce(a)) for i, a in self.terms)
        object.__setattr__(self, "terms", terms)
        if self.n < 1:
            raise CurveError("branch multiplicity must be positive")
        prev = None
        for i, a in terms:
            if i < self.n:
                raise CurveError("tangent to y-axis")
            if prev is not None and i <= prev:
                raise CurveError("exponents must be strictly increasing")
            if not a:
                raise CurveError("zero coefficient in normalized branch")
            prev = i
        if math.gcd(self.n, *(i for i, _ in terms)) != 1:
            raise CurveError("branch parametrization is not primitive")

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.terms)

    def coefficient(self, i: int) -> GaussianRational:
        for j, a in self.terms:
            if j == i:
                return a
        return GaussianRational(0)

    def exponents(self) -> list[Fraction]:
        """Exponents in x-units, ``i/n``."""
        return [Fraction(i, self.n) for i, _ in self.terms]

    def tangent_slope(self) -> GaussianRational:
        return self.coefficient(self.n)

    def x_terms(self) -> list[tuple[Fraction, GaussianRational]]:
        return [(Fraction(i, self.n), a) for i, a in self.terms]


@dataclass(frozen=True)
class Curve:
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise CurveError("a curve needs at least one branch")

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)

    def __getitem__(self, idx) -> Branch:
        return self.branches[idx]

    @property
    def multiplicity(self) -> int:
        return sum(b.n for b in self.branches)


@dataclass(frozen=True, order=True)
class Sheet:
    branch: int
    k: int


def normalize_branch(terms: Iterable, n: Optional[int] = None) -> Branch:
    """Bring a series or a parametrization to primitive integer form.

    With ``n is None``, ``terms`` are ``(exponent, coeff)`` pairs of a series
    in ``x`` with rational exponents.  Otherwise they are ``(i, coeff)`` pairs
    of the second coordinate of ``(w**n, sum coeff w**i)``.
    """
    merged: dict = {}
    for e, a in terms:
        e = Fraction(e)
        merged[e] = merged.get(e, GaussianRational(0)) + GaussianRational.coerce(a)
    merged = {e: a for e, a in merged.items() if a}

    if n is None:
        for e in merged:
            if e == 0:
                raise CurveError("curve does not pass through the origin")
            if e < 1:
                raise CurveError("tangent to y-axis")
        n = math.lcm(1, *(e.denominator for e in merged))
        int_terms = {int(e * n): a for e, a in merged.items()}
    else:
        if n < 1:
            raise CurveError("parametrization exponent must be positive")
        for e in merged:
            if e.denominator != 1:
                raise CurveError("parametrization exponents must be integers")
            if e < n:
                raise CurveError("tangent to y-axis")
        int_terms = {int(e): a for e, a in merged.items()}

    d = math.gcd(n, *int_terms)
    if d > 1:
        n //= d
        int_terms = {i // d: a for i, a in int_terms.items()}
    return Branch(n, tuple(sorted(int_terms.items())))


def gcd_chain(b: Branch) -> list[tuple[int, int]]:
    """``(i, gcd{j in {n} U A : j <= i})`` for each exponent of the support."""
    g = b.n
    out = []
    for i in b.support:
        g = math.gcd(g, i)
        out.append((i, g))
    return out


def essential_exponents(b: Branch) -> list[int]:
    """Support exponents at which the running gcd strictly drops."""
    out = []
    prev = b.n
    for i, g in gcd_chain(b):
        if g < prev and i != b.n:
            out.append(i)
        prev = g
    return out


def characteristic_exponents(b: Branch) -> list[Fraction]:
    return [Fraction(i, b.n) for i in essential_exponents(b)]


def sheets(c: Curve) -> list[Sheet]:
    return [Sheet(bi, k) for bi, b in enumerate(c.branches) for k in range(b.n)]


def sheet_coefficient(c: Curve, s: Sheet, exponent: Fraction) -> TaggedScalar:
    """Coefficient of ``x**exponent`` in the series of sheet ``s``."""
    b = c.branches[s.branch]
    i = exponent * b.n
    if i.denominator != 1:
        return ZERO
    a = b.coefficient(int(i))
    if not a:
        return ZERO
    return TaggedScalar(a, RootOfUnityTag(b.n, s.k * int(i)))


def sheet_terms(c: Curve, s: Sheet) -> list[tuple[Fraction, TaggedScalar]]:
    b = c.branches[s.branch]
    return [
        (Fraction(i, b.n), TaggedScalar(a, RootOfUnityTag(b.n, s.k * i)))
        for i, a in b.terms
    ]


def same_branch(b1: Branch, b2: Branch) -> bool:
    """True if two parametrizations define the same branch (same sheet set)."""
    if b1.n != b2.n or b1.support != b2.support:
        return False
    for k in range(b1.n):
        tag_ok = True
        for (i, a1), (_, a2) in zip(b1.terms, b2.terms):
            if not tagged_equal(TaggedScalar(a2), TaggedScalar(a1, RootOfUnityTag(b1.n, k * i))):
                tag_ok = False
                break
        if tag_ok:
            return True
    return False


def check_reduced(c: Curve) -> None:
    for j in range(len(c)):
        for k in range(j):
            if same_branch(c.branches[j], c.branches[k]):
                raise NonReducedError(f"non-reduced curve: branches {k + 1} and {j + 1} coincide")


def make_curve(branches: Sequence[Branch]) -> Curve:
    c = Curve(tuple(branches))
    check_reduced(c)
    return c


def truncate_branch(b: Branch, max_exponent: Fraction) -> Branch:
    """Drop every term whose x-exponent exceeds ``max_exponent``."""
    kept = [(i, a) for i, a in b.terms if Fraction(i, b.n) <= max_exponent]
    return normalize_branch(kept, n=b.n)


def shear(c: Curve, lam) -> Curve:
    """Image of the curve under ``(x, y) -> (x, y + lam*x)``."""
    lam = GaussianRational.coerce(lam)
    out = []
    for b in c.branches:
        terms = dict(b.terms)
        terms[b.n] = terms.get(b.n, GaussianRational(0)) + lam
        out.append(normalize_branch(terms.items(), n=b.n))
    return Curve(tuple(out))


def render_coefficient(a: GaussianRational) -> str:
    return str(a)


def render_branch(b: Branch) -> str:
    if not b.terms:
        return "y = 0"
    parts = []
    for idx, (e, a) in enumerate(b.x_terms()):
        if e == 1:
            mono = "x"
        elif e.denominator == 1:
            mono = f"x^{e.numerator}"
        else:
            mono = f"x^({format_rational(e)})"
        if a.im == 0 and a.re < 0:
            sign, coeff = "-", -a
        else:
            sign, coeff = "+", a
        body = mono if coeff == 1 else f"{render_coefficient(coeff)}*{mono}"
        if idx == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return "y = " + " ".join(parts)


def render_curve(c: Curve) -> str:
    return "\n".join(render_branch(b) for b in c.branches) + "\n"
