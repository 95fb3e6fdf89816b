"""Numerical experiments on sections ``{x = t}``.

Everything here is double precision.  The exact modules serve as oracles:
fitted contact exponents are compared with :func:`curvelab.contact.q_map`,
and the tree rebuilt from raw points with the symbolic carrousel tree.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .carrousel_tree import CarrouselNode, UltrametricError, build_carrousel_tree
from .contact import QMap, verify_ultrametric
from .puiseux import Curve, sheets
from .scalar import INFINITY

UNDERFLOW = 1e-300


@dataclass(frozen=True)
class SampleGrid:
    """Strictly decreasing positive ``t`` values."""

    ts: tuple

    def __post_init__(self):
        ts = tuple(float(t) for t in self.ts)
        object.__setattr__(self, "ts", ts)
        if not ts or any(t <= 0 for t in ts):
            raise ValueError("grid values must be positive")
        if any(b >= a for a, b in zip(ts, ts[1:])):
            raise ValueError("grid must be strictly decreasing")

    @classmethod
    def geometric(cls, tmax=1e-2, tmin=1e-4, count=20) -> "SampleGrid":
        if count < 2 or not 0 < tmin < tmax:
            raise ValueError("need 0 < tmin < tmax and count >= 2")
        return cls(tuple(np.geomspace(tmax, tmin, count)))

    def __len__(self):
        return len(self.ts)


DEFAULT_GRID = SampleGrid.geometric()


def sample_points(c: Curve, t: float) -> list[complex]:
    """Values of every sheet series at ``x = t``, in sheet order."""
    if t <= 0:
        raise ValueError("t must be positive")
    out = []
    for s in sheets(c):
        b = c.branches[s.branch]
        y = 0j
        for i, a in b.terms:
            y += complex(a) * np.exp(2j * np.pi * s.k * i / b.n) * t ** (i / b.n)
        out.append(complex(y))
    return out


def sample_grid(c: Curve, grid: SampleGrid = DEFAULT_GRID) -> list[list[complex]]:
    return [sample_points(c, t) for t in grid.ts]


def _fit(logt: np.ndarray, dists: np.ndarray) -> tuple[float, float, int]:
    """Slope of ``log d`` against ``log t`` on the prefix above the underflow guard."""
    keep = 0
    while keep < len(dists) and dists[keep] > UNDERFLOW:
        keep += 1
    if keep < 2:
        return math.inf, 0.0, keep
    x, y = logt[:keep], np.log(dists[:keep])
    coef, res, *_ = np.polyfit(x, y, 1, full=True)
    return float(coef[0]), float(res[0]) if len(res) else 0.0, keep


@dataclass
class QEstimate:
    q: np.ndarray  # fitted exponents, inf on the diagonal
    residual: float  # total least-squares residual over all pairs


def fit_exponents(points: Sequence[Sequence[complex]], grid: SampleGrid) -> QEstimate:
    pts = np.asarray(points, dtype=complex)
    if pts.shape[0] != len(grid):
        raise ValueError("one list of points per grid value is needed")
    if len(grid) < 3:
        raise ValueError("the grid needs at least 3 values")
    mu = pts.shape[1]
    logt = np.log(np.asarray(grid.ts))
    q = np.full((mu, mu), np.inf)
    total = 0.0
    for j, k in combinations(range(mu), 2):
        slope, res, _ = _fit(logt, np.abs(pts[:, j] - pts[:, k]))
        q[j, k] = q[k, j] = slope
        total += res
    return QEstimate(q, total)


def estimate_qmap(c: Curve, grid: SampleGrid = DEFAULT_GRID) -> QEstimate:
    return fit_exponents(sample_grid(c, grid), grid)


def round_exponent(v: float, denbound: int = 24) -> Fraction:
    """Best rational approximation with denominator at most ``denbound``."""
    if not math.isfinite(v):
        raise ValueError("cannot round a non-finite exponent")
    return Fraction(v).limit_denominator(denbound)


@dataclass
class NumericTree:
    tree: CarrouselNode
    qmap: QMap  # rounded exponents
    estimate: QEstimate


def recover_tree_numeric(
    points: Sequence[Sequence[complex]], grid: SampleGrid = DEFAULT_GRID, denbound: int = 24
) -> NumericTree:
    """Carrousel tree rebuilt from section points alone.

    Points must be listed in the same sheet order for every ``t``.  The
    exponents are fitted on the finer half of the grid (at least three
    values): lower order terms bias the slope by ``O(t**delta)``, which
    matters once values are rounded to denominators up to ``denbound``.
    """
    if denbound < 1:
        raise ValueError("denominator bound must be at least 1")
    counts = {len(p) for p in points}
    if len(counts) != 1:
        raise ValueError("inconsistent number of points across the grid")
    tail = max(3, len(grid) // 2)
    if len(points) != len(grid):
        raise ValueError("one list of points per grid value is needed")
    est = fit_exponents(list(points)[-tail:], SampleGrid(grid.ts[-tail:]))
    mu = est.q.shape[0]
    q = [[INFINITY] * mu for _ in range(mu)]
    for j, k in combinations(range(mu), 2):
        q[j][k] = q[k][j] = max(round_exponent(est.q[j, k], denbound), Fraction(1))
    bad = verify_ultrametric(q)
    if bad:
        raise UltrametricError(bad)
    qm = QMap(q)
    return NumericTree(build_carrousel_tree(qm), qm, est)


def cluster_radius(points: Sequence[complex], factor: Fraction = Fraction(1, 8)) -> float:
    """``factor`` times the least distance between distinct points."""
    d = min((abs(a - b) for a, b in combinations(points, 2)), default=0.0)
    return float(factor) * d


# ------------------------------------------------------------ ratio experiment


@dataclass
class PairRatio:
    branch: tuple  # (branch of c1, branch of c2)
    sheets: tuple  # (k, k')
    i0: Fraction  # first x-exponent where the two sheets differ
    predicted: float  # |a_i0| / |b_i0|
    ratios: list
    fitted: float

    @property
    def min(self) -> float:
        return min(self.ratios)

    @property
    def max(self) -> float:
        return max(self.ratios)


@dataclass
class RatioStats:
    pairs: list

    def to_json(self) -> dict:
        return {
            "pairs": [
                {
                    "branches": list(p.branch),
                    "sheets": list(p.sheets),
                    "i0": f"{p.i0.numerator}/{p.i0.denominator}",
                    "predicted": fmt6(p.predicted),
                    "fitted": fmt6(p.fitted),
                    "min": fmt6(p.min),
                    "max": fmt6(p.max),
                }
                for p in self.pairs
            ]
        }


def _first_difference(b, k1: int, k2: int) -> Optional[int]:
    for i, _ in b.terms:
        if (k1 - k2) * i % b.n:
            return i
    return None


def bilipschitz_ratio_experiment(
    c1: Curve,
    c2: Curve,
    pairing: Optional[Sequence[tuple]] = None,
    grid: SampleGrid = DEFAULT_GRID,
    sheet_pairs: Optional[Sequence[tuple]] = None,
) -> RatioStats:
    """Ratio ``d(g1(w), g1(w')) / d(g2(w), g2(w'))`` for conjugate ``w, w'``.

    ``pairing`` lists ``(branch of c1, branch of c2)``; by default branch i
    goes to branch i.  The fitted limit is the value at the smallest ``t``.
    """
    from .puiseux import essential_exponents

    pairing = list(pairing) if pairing is not None else [(i, i) for i in range(len(c1))]
    out = []
    for b1i, b2i in pairing:
        b1, b2 = c1.branches[b1i], c2.branches[b2i]
        if b1.n != b2.n or essential_exponents(b1) != essential_exponents(b2):
            raise ValueError(f"branches {b1i + 1} and {b2i + 1} cannot be paired")
        n = b1.n
        pairs = sheet_pairs or [(0, k) for k in range(1, n)]
        for k1, k2 in pairs:
            i0 = _first_difference(b1, k1, k2)
            if i0 is None:
                continue
            pred = abs(complex(b1.coefficient(i0))) / abs(complex(b2.coefficient(i0)))
            ratios = []
            for t in grid.ts:
                w = t ** (1 / n)
                z1 = np.exp(2j * np.pi * k1 / n) * w
                z2 = np.exp(2j * np.pi * k2 / n) * w
                d1 = abs(_param(b1, z1) - _param(b1, z2))
                d2 = abs(_param(b2, z1) - _param(b2, z2))
                ratios.append(float(d1 / d2))
            out.append(PairRatio((b1i, b2i), (k1, k2), Fraction(i0, n), pred, ratios, ratios[-1]))
    return RatioStats(out)


def _param(b, w: complex) -> complex:
    return complex(sum(complex(a) * w**i for i, a in b.terms))


# ------------------------------------------------------------ export


def fmt6(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return f"{v:.6g}"


def distances_csv(c: Curve, grid: SampleGrid = DEFAULT_GRID) -> str:
    """CSV rows ``t, j, k, distance`` followed by ``slope, j, k, value`` rows."""
    pts = sample_grid(c, grid)
    est = fit_exponents(pts, grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "t", "j", "k", "value"])
    mu = len(pts[0])
    for t, row in zip(grid.ts, pts):
        for j, k in combinations(range(mu), 2):
            w.writerow(["distance", fmt6(t), j, k, fmt6(abs(row[j] - row[k]))])
    for j, k in combinations(range(mu), 2):
        w.writerow(["slope", "", j, k, fmt6(est.q[j, k])])
    return buf.getvalue()
