"""Pairwise contact exponents between sheets (the q-map)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .puiseux import (
    Curve,
    InvariantError,
    NonReducedError,
    Sheet,
    characteristic_exponents,
    sheets,
)
from .scalar import INFINITY, _unity, format_rational, is_infinite


@dataclass
class QMap:
    """Symmetric matrix of contact exponents (x-units), ``inf`` on the diagonal.

    ``sheets`` may be ``None`` for matrices that do not come from a curve
    (e.g. numerically recovered ones); rows are then plain indices.
    """

    q: list
    sheets: Optional[list] = None

    def __len__(self):
        return len(self.q)

    def __getitem__(self, jk):
        j, k = jk
        return self.q[j][k]

    def values(self) -> set:
        return {self.q[j][k] for j, k in combinations(range(len(self.q)), 2)}

    def to_json(self) -> dict:
        rows = []
        for row in self.q:
            rows.append(["inf" if is_infinite(v) else [v.numerator, v.denominator] for v in row])
        sh = self.sheets or [Sheet(-1, j) for j in range(len(self.q))]
        return {"sheets": [{"branch": s.branch, "k": s.k} for s in sh], "q": rows}

    @classmethod
    def from_json(cls, data) -> "QMap":
        if isinstance(data, str):
            data = json.loads(data)
        q = [[INFINITY if v == "inf" else Fraction(v[0], v[1]) for v in row] for row in data["q"]]
        sh = [Sheet(s["branch"], s["k"]) for s in data["sheets"]]
        return cls(q, sh)


def _series_table(c: Curve):
    # per branch: {x-exponent: coeff}, plus n
    return [({Fraction(i, b.n): (i, a) for i, a in b.terms}, b.n) for b in c.branches]


def _contact(table, s1: Sheet, s2: Sheet, merged=None):
    t1, n1 = table[s1.branch]
    t2, n2 = table[s2.branch]
    N = math.lcm(n1, n2)
    f1, f2 = N // n1, N // n2
    if merged is None:
        merged = sorted(t1.keys() | t2.keys())
    for e in merged:
        a = t1.get(e)
        b = t2.get(e)
        if a is None or b is None:
            return e  # one coefficient is zero, the other is not
        (i1, c1), (i2, c2) = a, b
        m1 = (s1.k * i1 * f1) % N
        m2 = (s2.k * i2 * f2) % N
        if m1 == m2:
            if c1 != c2:
                return e
            continue
        u = _unity(N, (m2 - m1) % N)
        if u is None or c1 != c2 * u:
            return e
    return INFINITY


def sheet_contact(c: Curve, s1: Sheet, s2: Sheet):
    """Least x-exponent at which the two sheet series differ (``inf`` if equal)."""
    q = _contact(_series_table(c), s1, s2)
    if is_infinite(q) and s1 != s2:
        raise NonReducedError(f"non-reduced curve: sheets {s1} and {s2} coincide")
    return q


def q_map(c: Curve) -> QMap:
    table = _series_table(c)
    sh = sheets(c)
    mu = len(sh)
    q = [[INFINITY] * mu for _ in range(mu)]
    merged: dict = {}
    for j, k in combinations(range(mu), 2):
        key = (sh[j].branch, sh[k].branch)
        if key not in merged:
            merged[key] = sorted(table[key[0]][0].keys() | table[key[1]][0].keys())
        v = _contact(table, sh[j], sh[k], merged[key])
        if is_infinite(v):
            raise NonReducedError(f"non-reduced curve: sheets {sh[j]} and {sh[k]} coincide")
        q[j][k] = q[k][j] = v
    return QMap(q, sh)


def _branch_rows(qm: QMap, b: int) -> list[int]:
    return [j for j, s in enumerate(qm.sheets) if s.branch == b]


def coincidence_exponent(c: Curve, b1: int, b2: int, qm: Optional[QMap] = None) -> Fraction:
    """Largest contact between a sheet of ``b1`` and a sheet of ``b2``."""
    if b1 == b2:
        raise ValueError("coincidence exponent needs two distinct branches")
    qm = qm or q_map(c)
    return max(qm.q[j][k] for j in _branch_rows(qm, b1) for k in _branch_rows(qm, b2))


def intersection_multiplicity(c: Curve, b1: int, b2: int, qm: Optional[QMap] = None) -> int:
    """Sum of contacts over all ordered cross pairs of sheets."""
    if b1 == b2:
        raise ValueError("intersection multiplicity needs two distinct branches")
    qm = qm or q_map(c)
    total = sum(qm.q[j][k] for j in _branch_rows(qm, b1) for k in _branch_rows(qm, b2))
    total = Fraction(total)
    if total.denominator != 1:
        raise InvariantError(f"non-integral intersection multiplicity {total}")
    return int(total)


def truncation_exponent(c: Curve, b: int, qm: Optional[QMap] = None) -> Fraction:
    """Exponent above which the terms of branch ``b`` do not affect the topology."""
    candidates = list(characteristic_exponents(c.branches[b]))
    if len(c) > 1:
        qm = qm or q_map(c)
        candidates += [coincidence_exponent(c, b, o, qm) for o in range(len(c)) if o != b]
    return max(candidates, default=Fraction(1))


def verify_ultrametric(qm) -> list[tuple[int, int, int]]:
    """Triples ``j < k < l`` whose smallest pairwise contact is attained only once."""
    q = qm.q if isinstance(qm, QMap) else qm
    mu = len(q)
    # compare integer ranks instead of rationals
    rank = {v: r for r, v in enumerate(sorted({q[j][k] for j, k in combinations(range(mu), 2)}))}
    rq = [[rank[q[j][k]] if j != k else -1 for k in range(mu)] for j in range(mu)]
    bad = []
    for j, k, l in combinations(range(mu), 3):
        a, b, c = rq[j][k], rq[k][l], rq[j][l]
        lo = min(a, b, c)
        if (a == lo) + (b == lo) + (c == lo) == 1:
            bad.append((j, k, l))
    return bad


def format_qvalue(v) -> str:
    return format_rational(v)
