"""Space curve germs and their plane projections.

A space branch is ``(w**n, p_2(w), ..., p_N(w))``; a direction
``b = (b_1, ..., b_N)`` stands for ``(z_1, ..., z_N) -> (z_1, sum b_j z_j)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .carrousel_tree import canonical_code, curve_tree
from .puiseux import (
    Curve,
    CurveError,
    NonReducedError,
    check_reduced,
    normalize_branch,
)
from .scalar import GaussianRational, RootOfUnityTag, tagged_difference_is_zero


@dataclass(frozen=True)
class SpaceBranch:
    """``coords[j]`` maps exponent ``i`` to ``a_{j+2, i}`` (coordinates 2..N)."""

    n: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(
            {int(i): GaussianRational.coerce(a) for i, a in dict(poly).items() if a}
            for poly in self.coords
        )
        object.__setattr__(self, "coords", coords)
        if self.n < 1:
            raise CurveError("branch multiplicity must be positive")
        if not coords:
            raise CurveError("a space branch needs at least two coordinates")
        for poly in coords:
            if any(i < self.n for i in poly):
                raise CurveError("tangent to the z_1 = 0 hyperplane")
        if math.gcd(self.n, *self.support) != 1:
            raise CurveError("branch parametrization is not primitive")

    @property
    def N(self) -> int:
        return len(self.coords) + 1

    @property
    def support(self) -> list[int]:
        return sorted(set().union(*self.coords))

    def coefficient(self, j: int, i: int) -> GaussianRational:
        """``a_{ji}`` with 1-based ``j``; ``a_{1n} = 1`` and ``a_{1i} = 0`` otherwise."""
        if j == 1:
            return GaussianRational(1 if i == self.n else 0)
        return self.coords[j - 2].get(i, GaussianRational(0))

    def essential_exponents(self) -> list[int]:
        out, g = [], self.n
        for i in self.support:
            g2 = math.gcd(g, i)
            if g2 < g:
                out.append(i)
            g = g2
        return out

    def rescaled(self, N: int) -> "SpaceBranch":
        """Same branch written with ``w -> w**(N/n)`` (not primitive; internal use)."""
        f = N // self.n
        obj = object.__new__(SpaceBranch)
        object.__setattr__(obj, "n", N)
        object.__setattr__(obj, "coords", tuple({i * f: a for i, a in poly.items()} for poly in self.coords))
        return obj


@dataclass(frozen=True)
class SpaceCurve:
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise CurveError("a curve needs at least one branch")
        dims = {b.N for b in self.branches}
        if len(dims) != 1:
            raise CurveError("branches live in spaces of different dimensions")

    @property
    def N(self) -> int:
        return self.branches[0].N

    def __len__(self):
        return len(self.branches)


def normalize_space_branch(n: int, coords: Sequence) -> SpaceBranch:
    """Primitive form of ``(w**n, coords...)``; ``coords`` are lists of ``(i, a)``."""
    polys = []
    for poly in coords:
        merged: dict = {}
        for i, a in poly:
            if i != int(i):
                raise CurveError("parametrization exponents must be integers")
            merged[int(i)] = merged.get(int(i), GaussianRational(0)) + GaussianRational.coerce(a)
        polys.append({i: a for i, a in merged.items() if a})
    exps = set().union(*polys)
    d = math.gcd(n, *exps)
    if d > 1:
        n //= d
        polys = [{i // d: a for i, a in p.items()} for p in polys]
    return SpaceBranch(n, tuple(polys))


def embed(c: Curve, N: int = 3) -> SpaceCurve:
    """Plane curve as ``(x, y, 0, ..., 0)`` in ``C^N``."""
    if N < 2:
        raise ValueError("N must be at least 2")
    out = []
    for b in c.branches:
        out.append(SpaceBranch(b.n, (dict(b.terms),) + tuple({} for _ in range(N - 2))))
    return SpaceCurve(tuple(out))


def parse_space_curve(text: str) -> SpaceCurve:
    from .parsing import _located, parse_lines

    branches = []
    for raw in parse_lines(text):
        try:
            if raw.kind == "series":
                b = normalize_branch(raw.coords[0])
                branches.append(SpaceBranch(b.n, (dict(b.terms),)))
            else:
                branches.append(normalize_space_branch(raw.n, raw.coords))
        except CurveError as err:
            raise _located(err, raw.line) from None
    sc = SpaceCurve(tuple(branches))
    check_space_reduced(sc)
    return sc


def read_space_curve(path) -> SpaceCurve:
    with open(path, encoding="utf-8") as fh:
        return parse_space_curve(fh.read())


# ------------------------------------------------------------ genericity


@dataclass(frozen=True)
class Verdict:
    """``kind`` is GENERIC, FAILS_BRANCH or FAILS_PAIR.  Branch numbers are 1-based."""

    kind: str
    branch: Optional[int] = None
    pair: Optional[tuple] = None
    residue: Optional[int] = None
    order: Optional[int] = None
    exponent: Optional[int] = None

    @property
    def generic(self) -> bool:
        return self.kind == "GENERIC"

    def __str__(self):
        if self.kind == "FAILS_BRANCH":
            return f"FAILS_BRANCH({self.branch}, {self.exponent})"
        if self.kind == "FAILS_PAIR":
            a, b = self.pair
            return f"FAILS_PAIR(({a}, {b}), r={self.residue} mod {self.order}, i={self.exponent})"
        return "GENERIC"

    def to_json(self) -> dict:
        if self.generic:
            return {"generic": True, "failure": None}
        fail: dict = {"kind": self.kind, "exponent": self.exponent}
        if self.kind == "FAILS_BRANCH":
            fail["branch"] = self.branch
        else:
            fail.update(pair=list(self.pair), residue=self.residue, order=self.order)
        return {"generic": False, "failure": fail}


GENERIC = Verdict("GENERIC")


def _direction(c: SpaceCurve, d: Sequence) -> list[GaussianRational]:
    """Full ``(b_1, ..., b_N)``; a vector of length ``N - 1`` gets ``b_1 = 0``."""
    d = [GaussianRational.coerce(v) for v in d]
    if len(d) == c.N - 1:
        d = [GaussianRational(0)] + d
    if len(d) != c.N:
        raise ValueError(f"direction needs {c.N - 1} or {c.N} entries, got {len(d)}")
    if not any(d[1:]):
        raise ValueError("direction (b_2, ..., b_N) must not vanish")
    return d


def _pair_form(b: SpaceBranch, i: int, bvec) -> GaussianRational:
    total = GaussianRational(0)
    for j, bj in enumerate(bvec, start=1):
        if bj:
            total = total + bj * b.coefficient(j, i)
    return total


def _first_difference(g1: SpaceBranch, g2: SpaceBranch, N: int, r: int) -> Optional[int]:
    """Least ``i`` with ``a_{ji} != zeta_N**(r i) a'_{ji}`` for some ``j``."""
    for i in sorted(set(g1.support) | set(g2.support) | {N}):
        tag = RootOfUnityTag(N, r * i)
        for j in range(1, g1.N + 1):
            if not tagged_difference_is_zero(g1.coefficient(j, i), g2.coefficient(j, i), tag):
                return i
    return None


def check_space_reduced(c: SpaceCurve) -> None:
    for p, q in itertools.combinations(range(len(c)), 2):
        b1, b2 = c.branches[p], c.branches[q]
        if b1.n != b2.n:
            continue
        if any(_first_difference(b1, b2, b1.n, r) is None for r in range(b1.n)):
            raise NonReducedError(f"non-reduced curve: branches {p + 1} and {q + 1} coincide")


def is_generic(c: SpaceCurve, d: Sequence) -> Verdict:
    bvec = _direction(c, d)
    for idx, b in enumerate(c.branches):
        for i in b.essential_exponents():
            if not _pair_form(b, i, bvec):
                return Verdict("FAILS_BRANCH", branch=idx + 1, exponent=i)
    for p, q in itertools.combinations(range(len(c)), 2):
        N = math.lcm(c.branches[p].n, c.branches[q].n)
        g1 = c.branches[p].rescaled(N)
        g2 = c.branches[q].rescaled(N)
        for r in range(N):
            i = _first_difference(g1, g2, N, r)
            if i is None:
                raise NonReducedError("non-reduced curve")
            A = _pair_form(g1, i, bvec)
            B = _pair_form(g2, i, bvec)
            if tagged_difference_is_zero(A, B, RootOfUnityTag(N, r * i)):
                return Verdict("FAILS_PAIR", pair=(p + 1, q + 1), residue=r, order=N, exponent=i)
    return GENERIC


def candidate_directions(dim: int, max_norm: Optional[int] = None):
    """Integer vectors of length ``dim`` by increasing max-norm.

    Within one norm: fewer nonzero entries first, then vectors without
    negative entries, then lexicographically decreasing.
    """
    g = 1
    while max_norm is None or g <= max_norm:
        shell = [
            v
            for v in itertools.product(range(-g, g + 1), repeat=dim)
            if max(map(abs, v)) == g
        ]
        shell.sort(key=lambda v: (sum(1 for x in v if x), any(x < 0 for x in v), [-x for x in v]))
        yield from shell
        g += 1


def find_generic_direction(c: SpaceCurve) -> tuple:
    for v in candidate_directions(c.N - 1):
        if is_generic(c, v).generic:
            return v
    raise AssertionError("unreachable")  # pragma: no cover


@dataclass
class Projection:
    curve: Curve
    verdict: Verdict
    warnings: list = field(default_factory=list)


def project(c: SpaceCurve, d: Sequence) -> Projection:
    bvec = _direction(c, d)
    verdict = is_generic(c, d)
    warnings = []
    if not verdict.generic:
        warnings.append(f"non-generic direction: {verdict}")
    out = []
    for idx, b in enumerate(c.branches):
        terms = {}
        for i in sorted(set(b.support) | {b.n}):
            v = _pair_form(b, i, bvec)
            if v:
                terms[i] = v
        pb = normalize_branch(terms.items(), n=b.n)
        if pb.n != b.n:
            warnings.append(f"non-generic collapse: branch {idx + 1} drops from multiplicity {b.n} to {pb.n}")
        out.append(pb)
    curve = Curve(tuple(out))
    try:
        check_reduced(curve)
    except NonReducedError as err:
        warnings.append(f"projected curve is not reduced ({err})")
    return Projection(curve, verdict, warnings)


def generic_projection_topology(c: SpaceCurve) -> str:
    d = find_generic_direction(c)
    return canonical_code(curve_tree(project(c, d).curve))


def format_direction(d) -> str:
    return "(" + ", ".join(str(GaussianRational.coerce(v)) for v in d) + ")"
