"""Carrousel decomposition of a neighbourhood of a plane curve germ.

Pieces:

* ``B1`` -- the square ball minus the cones around the tangent lines;
* ``B``  -- ``alpha|x|^p <= |y - f| <= beta|x|^p`` minus hole disks of radius
  ``gamma|x|^p`` around ``f + a x^p`` for each coefficient ``a``;
* ``A``  -- the annular region between a hole (or cone, or central disk)
  and the next B-piece inside it;
* ``D``  -- a hole, central disk or cone containing a single sheet.

All constants are exact rationals.  Sections ``{x = t}`` are rendered as SVG.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .carrousel_tree import _carrousel_code, build_carrousel_tree, equivalent
from .contact import q_map, truncation_exponent
from .puiseux import (
    Curve,
    InvariantError,
    sheets as curve_sheets,
    shear,
    truncate_branch,
)
from .scalar import (
    ZERO,
    GaussianRational,
    RootOfUnityTag,
    TaggedScalar,
    _unity,
    format_rational,
    sqrt_bounds,
    tagged_equal,
)


class ConstantsError(InvariantError):
    pass


class NotEquivalentError(ValueError):
    def __init__(self, detail: str = ""):
        super().__init__("not equivalent" + (f" ({detail})" if detail else ""))


@dataclass(frozen=True)
class DecompositionParams:
    """``eta`` and ``R`` are filled in from the tangent slopes when ``None``."""

    eps0: Fraction = Fraction(1, 4)
    eta: Optional[Fraction] = None
    R: Optional[Fraction] = None


@dataclass
class Piece:
    id: int
    kind: str  # "B1", "A", "B" or "D"
    rate: Fraction
    sheets: frozenset  # indices into the decomposition's sheet list
    sector: Optional[int] = None
    f: tuple = ()  # ((exponent, TaggedScalar), ...) evaluated on the anchor sheet
    anchor: Optional[int] = None
    inner_rate: Optional[Fraction] = None  # A-pieces: rate of the B-piece inside
    coeffs: list = field(default_factory=list)  # B-pieces: hole coefficients
    inserted: list = field(default_factory=list)  # per hole: zero inserted for alignment
    central: bool = False  # A/D-pieces living in a central disk
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    orbit: Optional[int] = None
    children: list = field(default_factory=list)

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()

    @property
    def holes(self) -> int:
        return len(self.coeffs)


@dataclass
class PieceDecomposition:
    curve: Curve  # sheared (and truncated) curve the pieces refer to
    shear: int
    params: DecompositionParams
    sheets: list
    series: list  # per sheet: [(exponent, TaggedScalar, inserted)]
    slopes: list  # per sector: GaussianRational tangent slope (after shear)
    root: Piece

    def pieces(self) -> list[Piece]:
        return list(self.root.walk())

    def inventory(self) -> Counter:
        return Counter(p.kind for p in self.pieces())


# ------------------------------------------------------------ helpers


def auto_shear(c: Curve) -> tuple[Curve, int]:
    """Shear by the least positive integer making every tangent slope nonzero."""
    slopes = [b.tangent_slope() for b in c.branches]
    if all(slopes):
        return c, 0
    lam = 1
    while any(s == -lam for s in slopes):
        lam += 1
    return shear(c, lam), lam


def truncated(c: Curve) -> Curve:
    qm = q_map(c)
    return Curve(tuple(truncate_branch(b, truncation_exponent(c, i, qm)) for i, b in enumerate(c.branches)))


def _modulus_bounds(a: TaggedScalar, digits=6) -> tuple[Fraction, Fraction]:
    return sqrt_bounds(a.modulus_squared(), digits)


def _distance_lower_bound(a: TaggedScalar, b: TaggedScalar) -> Fraction:
    """Rational lower bound for ``|a - b|``, exact when the difference is Gaussian."""
    N = math.lcm(a.tag.order, b.tag.order)
    ma = a.tag.residue * (N // a.tag.order)
    mb = b.tag.residue * (N // b.tag.order)
    u = _unity(N, (mb - ma) % N)
    if u is not None:
        # |a - b| = |c_a - c_b zeta^(mb - ma)|
        return sqrt_bounds((a.coeff - b.coeff * u).norm(), 6)[0]
    d = abs(complex(a) - complex(b))
    for digits in (6, 9, 12, 15):
        lo = Fraction(math.floor(d * 10**digits * (1 - 1e-9)), 10**digits)
        if lo > 0:
            return lo
    raise ConstantsError("coefficients too close to separate")


def choose_constants(coeff_lists) -> tuple[Fraction, Fraction, Fraction]:
    """``(alpha, beta, gamma)`` valid for every nonzero coefficient in every list.

    ``gamma = min(G/2, H)/3``, ``alpha = H/2``, ``beta = 2*max|a| + gamma``
    with ``G`` the least distance between distinct coefficients of one list
    and ``H`` the least modulus, both replaced by rational lower bounds.
    """
    nonzero = [a for cl in coeff_lists for a in cl if not a.is_zero]
    if not nonzero:
        raise ConstantsError("no nonzero coefficient to size the piece")
    H = min(_modulus_bounds(a)[0] for a in nonzero)
    Hmax = max(_modulus_bounds(a)[1] for a in nonzero)
    gaps = [
        _distance_lower_bound(a, b)
        for cl in coeff_lists
        for a, b in itertools.combinations([x for x in cl if not x.is_zero], 2)
    ]
    G = min(gaps, default=None)
    gamma = (min(G / 2, H) if G is not None else H) / 3
    alpha = H / 2
    beta = 2 * Hmax + gamma
    for a in nonzero:
        m2 = a.modulus_squared()
        # alpha < |a| - gamma  and  |a| + gamma < beta, squared
        if not ((alpha + gamma) ** 2 < m2 and m2 < (beta - gamma) ** 2):
            raise ConstantsError(f"constants infeasible for coefficient {a}")
    return alpha, beta, gamma


def check_constants(p: Piece) -> bool:
    for a, ins in zip(p.coeffs, p.inserted):
        if ins:
            continue
        m2 = a.modulus_squared()
        if not ((p.alpha + p.gamma) ** 2 < m2 < (p.beta - p.gamma) ** 2):
            return False
    return True


def _resolve_params(params: DecompositionParams, slopes) -> DecompositionParams:
    eta, R = params.eta, params.R
    if eta is None:
        if len(slopes) < 2:
            eta = Fraction(1, 4)
        else:
            d2 = min((a - b).norm() for a, b in itertools.combinations(slopes, 2))
            eta = sqrt_bounds(d2, 6)[0] / 4
    if R is None:
        R = 1 + max(sqrt_bounds(s.norm(), 6)[1] for s in slopes)
    if eta <= 0 or R <= 0 or params.eps0 <= 0:
        raise ValueError("decomposition parameters must be positive")
    return DecompositionParams(params.eps0, eta, R)


def _sheet_series(c: Curve, sh: list, inserted: Optional[dict]) -> list:
    out = []
    for s in sh:
        b = c.branches[s.branch]
        terms = {
            Fraction(i, b.n): (TaggedScalar(a, RootOfUnityTag(b.n, s.k * i)), False) for i, a in b.terms
        }
        for e in (inserted or {}).get(s.branch, ()):
            terms.setdefault(Fraction(e), (ZERO, True))
        out.append([(e, a, ins) for e, (a, ins) in sorted(terms.items())])
    return out


def _orbit_key(sheet_set, sh: list, mult: dict):
    members = [sh[j] for j in sheet_set]
    period = math.lcm(1, *(mult[s.branch] for s in members))
    best = None
    for shift in range(period):
        key = tuple(sorted((s.branch, (s.k + shift) % mult[s.branch]) for s in members))
        if best is None or key < best:
            best = key
    return best


# ------------------------------------------------------------ decomposition


def decompose(
    c: Curve,
    params: Optional[DecompositionParams] = None,
    *,
    truncate: bool = True,
    inserted: Optional[dict] = None,
) -> PieceDecomposition:
    """Carrousel decomposition of ``c``.

    ``inserted`` maps a branch index to x-exponents at which a zero term is
    added (used to match pieces against another curve).
    """
    params = params or DecompositionParams()
    c, lam = auto_shear(c)
    if truncate:
        c = truncated(c)
    sh = curve_sheets(c)
    series = _sheet_series(c, sh, inserted)
    mult = {i: b.n for i, b in enumerate(c.branches)}

    slopes: list[GaussianRational] = []
    sector_of = []
    for s in sh:
        a = c.branches[s.branch].tangent_slope()
        for idx, known in enumerate(slopes):
            if known == a:
                sector_of.append(idx)
                break
        else:
            slopes.append(a)
            sector_of.append(len(slopes) - 1)
    params = _resolve_params(params, slopes)

    pieces: list[Piece] = []
    orbits: dict = {}

    def new(kind, rate, members, **kw) -> Piece:
        key = (kind, _orbit_key(members, sh, mult))
        orbit = orbits.setdefault(key, len(orbits))
        p = Piece(len(pieces), kind, Fraction(rate), frozenset(members), orbit=orbit, **kw)
        pieces.append(p)
        return p

    def terms_above(j, rate):
        return [(e, a, ins) for e, a, ins in series[j] if e > rate]

    def region(members: list[int], rate: Fraction, sector: int, central: bool) -> Piece:
        nxt = [terms_above(j, rate) for j in members]
        rates = [t[0][0] for t in nxt if t]
        if not rates:
            if len(members) != 1:
                raise InvariantError("coinciding sheets in a reduced curve")
            j = members[0]
            return new("D", rate, members, sector=sector, anchor=j,
                       f=tuple((e, a) for e, a, _ in series[j] if e <= rate), central=central)
        p = min(rates)
        a_piece = new("A", rate, members, sector=sector, anchor=min(members), inner_rate=p, central=central)
        a_piece.children.append(bpiece(members, p, sector))
        return a_piece

    def bpiece(members: list[int], p: Fraction, sector: int) -> Piece:
        anchor = min(members)
        f = tuple((e, a) for e, a, _ in series[anchor] if e < p)
        holes: list[list] = []  # [coeff, inserted, members]
        centre: list[int] = []
        for j in members:
            hit = [(a, ins) for e, a, ins in series[j] if e == p]
            if not hit:
                centre.append(j)
                continue
            a, ins = hit[0]
            for h in holes:
                if tagged_equal(h[0], a):
                    h[2].append(j)
                    break
            else:
                holes.append([a, ins, [j]])
        b = new("B", p, members, sector=sector, anchor=anchor, f=f,
                coeffs=[h[0] for h in holes], inserted=[h[1] for h in holes])
        nonzero = [h[0] for h in holes if not h[0].is_zero]
        if nonzero:
            b.alpha, b.beta, b.gamma = choose_constants([nonzero])
        for h in holes:
            b.children.append(region(h[2], p, sector, False))
        if centre:
            b.children.append(region(centre, p, sector, True))
        return b

    root = new("B1", 1, range(len(sh)))
    for idx in range(len(slopes)):
        members = [j for j in range(len(sh)) if sector_of[j] == idx]
        root.children.append(region(members, Fraction(1), idx, False))
    return PieceDecomposition(c, lam, params, sh, series, slopes, root)


def piece_code(p: Piece) -> str:
    """Structure code: kinds, rates and hole counts, children sorted."""
    head = f"{p.kind}:{format_rational(p.rate)}"
    if p.kind == "A":
        head += f">{format_rational(p.inner_rate)}"
    if p.kind == "B":
        head += f"/{p.holes}"
    if p.central:
        head += "c"
    kids = sorted(piece_code(ch) for ch in p.children)
    return head + (f"[{','.join(kids)}]" if kids else "")


# ------------------------------------------------------------ alignment


@dataclass
class PiecePairing:
    left: PieceDecomposition
    right: PieceDecomposition
    pairs: list  # (left Piece, right Piece)
    insertions: list  # (side, branch, exponent) with side 1 or 2, branch 0-based

    def mapping(self) -> dict:
        return {a.id: b.id for a, b in self.pairs}


def _branch_bijection(c1: Curve, c2: Curve) -> Optional[tuple]:
    q1, q2 = q_map(c1), q_map(c2)
    t1, t2 = build_carrousel_tree(q1), build_carrousel_tree(q2)
    lab1 = {j: s.branch for j, s in enumerate(q1.sheets)}
    target = _carrousel_code(t1, lab1)
    for perm in itertools.permutations(range(len(c2))):
        if any(c1.branches[i].n != c2.branches[perm[i]].n for i in range(len(c1))):
            continue
        inv = {perm[i]: i for i in range(len(c1))}
        lab2 = {j: inv[s.branch] for j, s in enumerate(q2.sheets)}
        if _carrousel_code(t2, lab2) == target:
            return perm
    return None


def _match(p1: Piece, p2: Piece, out: list):
    out.append((p1, p2))
    k1 = sorted(p1.children, key=piece_code)
    k2 = sorted(p2.children, key=piece_code)
    for a, b in zip(k1, k2):
        _match(a, b, out)


def align_decompositions(c1: Curve, c2: Curve, params: Optional[DecompositionParams] = None) -> PiecePairing:
    """Pair the pieces of two topologically equivalent curves.

    Series are used untruncated; every exponent present in one partner branch
    but not the other is inserted with coefficient zero.  Paired B-pieces get
    the same constants.
    """
    if len(c1) != len(c2) or not equivalent(c1, c2):
        raise NotEquivalentError()
    s1, _ = auto_shear(c1)
    s2, _ = auto_shear(c2)
    perm = _branch_bijection(s1, s2)
    if perm is None:
        raise NotEquivalentError("no branch matching")
    ins1: dict = {}
    ins2: dict = {}
    insertions = []
    for i, j in enumerate(perm):
        e1 = {Fraction(e) for e, _ in s1.branches[i].x_terms()}
        e2 = {Fraction(e) for e, _ in s2.branches[j].x_terms()}
        for e in sorted(e2 - e1):
            ins1.setdefault(i, set()).add(e)
            insertions.append((1, i, e))
        for e in sorted(e1 - e2):
            ins2.setdefault(j, set()).add(e)
            insertions.append((2, j, e))
    d1 = decompose(c1, params, truncate=False, inserted=ins1)
    d2 = decompose(c2, params, truncate=False, inserted=ins2)
    if piece_code(d1.root) != piece_code(d2.root):
        raise InvariantError("piece trees of equivalent curves differ")
    pairs: list = []
    _match(d1.root, d2.root, pairs)
    for a, b in pairs:
        if a.kind == "B" and b.kind == "B":
            alpha, beta, gamma = choose_constants([a.coeffs, b.coeffs])
            a.alpha = b.alpha = alpha
            a.beta = b.beta = beta
            a.gamma = b.gamma = gamma
    return PiecePairing(d1, d2, pairs, insertions)


# ------------------------------------------------------------ sections


def _eval(terms, t: float) -> complex:
    return sum(complex(a) * t ** float(e) for e, a in terms)


def sheet_point(dec: PieceDecomposition, j: int, t: float) -> complex:
    return _eval([(e, a) for e, a, _ in dec.series[j]], t)


def section_geometry(dec: PieceDecomposition, t: float) -> list[dict]:
    """Circles of every piece in ``{x = t}`` (sheared coordinates)."""
    t = float(t)
    out = []
    for p in dec.pieces():
        item = {"piece": p, "circles": []}
        if p.kind == "B1":
            item["circles"].append(("ball", 0j, float(dec.params.R) * t))
            for s in dec.slopes:
                item["circles"].append(("cone", complex(s) * t, float(dec.params.eta) * t))
        elif p.kind == "B":
            centre = _eval(p.f, t)
            scale = t ** float(p.rate)
            if p.beta is not None:
                item["circles"].append(("outer", centre, float(p.beta) * scale))
                item["circles"].append(("inner", centre, float(p.alpha) * scale))
                for a in p.coeffs:
                    item["circles"].append(("hole", centre + complex(a) * scale, float(p.gamma) * scale))
        elif p.kind == "D":
            item["circles"].append(("disk",) + _d_disk(dec, p, t))
        out.append(item)
    return out


def _parent_map(dec: PieceDecomposition) -> dict:
    return {ch.id: p for p in dec.pieces() for ch in p.children}


def _d_disk(dec: PieceDecomposition, p: Piece, t: float, parents=None) -> tuple[complex, float]:
    parents = parents or _parent_map(dec)
    par = parents[p.id]
    if par.kind == "B1":
        return complex(dec.slopes[p.sector]) * t, float(dec.params.eta) * t
    scale = t ** float(par.rate)
    centre = _eval(par.f, t)
    if p.central:
        return centre, float(par.alpha) * scale
    (j,) = p.sheets
    for e, a, _ in dec.series[j]:
        if e == par.rate:
            return centre + complex(a) * scale, float(par.gamma) * scale
    raise InvariantError("D-piece without a hole coefficient")


def check_section(dec: PieceDecomposition, t: float) -> list[str]:
    """Numerical sanity checks in ``{x = t}``; returns a list of problems."""
    problems = []
    t = float(t)
    parents = _parent_map(dec)
    d_disks = [(p, _d_disk(dec, p, t, parents)) for p in dec.pieces() if p.kind == "D"]
    for j in range(len(dec.sheets)):
        y = sheet_point(dec, j, t)
        inside = [p.id for p, (c0, r) in d_disks if abs(y - c0) < r]
        if len(inside) != 1:
            problems.append(f"sheet {j} lies in {len(inside)} D-disks at t={t:g}")
        cone = complex(dec.slopes[_sector_of(dec, j)]) * t
        if abs(y - cone) > float(dec.params.eta) * t:
            problems.append(f"sheet {j} leaves its cone at t={t:g}")
    for p in dec.pieces():
        if p.kind != "B" or p.gamma is None:
            continue
        scale = t ** float(p.rate)
        centres = [complex(a) * scale for a in p.coeffs]
        r = float(p.gamma) * scale
        for a, b in itertools.combinations(centres, 2):
            if abs(a - b) <= 2 * r:
                problems.append(f"holes of piece {p.id} overlap at t={t:g}")
        par = parents[p.id]
        if par.kind == "A":
            outer = float(p.beta) * scale
            host = parents[par.id]
            if host.kind == "B1":
                room = float(dec.params.eta) * t
                offset = abs(_eval(p.f, t) - complex(dec.slopes[p.sector]) * t)
            else:
                hs = t ** float(host.rate)
                room = float(host.alpha if par.central else host.gamma) * hs
                offset = abs(_eval(p.f, t) - _eval(host.f, t) - (0 if par.central else _hole_coeff(host, p, t)))
            if offset + outer >= room:
                problems.append(f"piece {p.id} does not fit in its host at t={t:g}")
    return problems


def _hole_coeff(host: Piece, p: Piece, t: float) -> complex:
    rate = host.rate
    for e, a in p.f:
        if e == rate:
            return complex(a) * t ** float(rate)
    return 0j


def _sector_of(dec: PieceDecomposition, j: int) -> int:
    for ch in dec.root.children:
        if j in ch.sheets:
            return ch.sector
    raise KeyError(j)


def largest_verified_t(dec: PieceDecomposition, steps: int = 20) -> Optional[Fraction]:
    """Largest ``eps0 / 2**k`` (``k < steps``) at which :func:`check_section` passes."""
    t = Fraction(dec.params.eps0)
    for _ in range(steps):
        if not check_section(dec, float(t)):
            return t
        t /= 2
    return None


def _fmt(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _data(v: float) -> str:
    s = f"{v:.6g}"
    return "0" if s == "-0" else s


def render_section(c: Curve, t, params: Optional[DecompositionParams] = None, size: int = 480) -> str:
    """SVG picture of the section ``{x = t}``.

    Drawn in the original coordinates: the automatic shear acts on each
    section as a translation, which is undone here.
    """
    dec = c if isinstance(c, PieceDecomposition) else decompose(c, params)
    t_q = Fraction(t) if not isinstance(t, float) else Fraction(t).limit_denominator(10**9)
    if not 0 < t_q <= dec.params.eps0:
        raise ValueError(f"t must lie in (0, {format_rational(dec.params.eps0)}]")
    tf = float(t_q)
    shift = -dec.shear * tf
    geo = section_geometry(dec, tf)

    # viewport: the cones and the sheet points (the whole ball for several tangents)
    points = [sheet_point(dec, j, tf) for j in range(len(dec.sheets))]
    if len(dec.slopes) == 1:
        centre = complex(dec.slopes[0]) * tf + shift
        reach = max([float(dec.params.eta) * tf] + [abs(z + shift - centre) for z in points])
        half = 1.15 * reach
    else:
        centre = shift
        half = 1.05 * float(dec.params.R) * tf
    k = size / (2 * half)

    def xy(z: complex) -> tuple[str, str]:
        z = z + shift - centre
        return _fmt(size / 2 + k * z.real), _fmt(size / 2 - k * z.imag)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" data-t="{format_rational(t_q)}" data-shear="{dec.shear}">',
        f'  <rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    styles = {
        "ball": 'stroke="#999999" stroke-dasharray="4 3"',
        "cone": 'stroke="#555555"',
        "outer": 'stroke="#1f77b4"',
        "inner": 'stroke="#1f77b4" stroke-dasharray="2 2"',
        "hole": 'stroke="#d62728"',
        "disk": 'stroke="#2ca02c" stroke-dasharray="1 2"',
    }
    for item in geo:
        p = item["piece"]
        attrs = f'data-kind="{p.kind}" data-rate="{format_rational(p.rate)}" data-id="{p.id}"'
        if p.orbit is not None:
            attrs += f' data-orbit="{p.orbit}"'
        if p.kind == "A":
            attrs += f' data-inner-rate="{format_rational(p.inner_rate)}"'
        if p.kind == "B":
            attrs += f' data-holes="{p.holes}"'
            if p.alpha is not None:
                attrs += (
                    f' data-alpha="{format_rational(p.alpha)}" data-beta="{format_rational(p.beta)}"'
                    f' data-gamma="{format_rational(p.gamma)}"'
                )
        lines.append(f"  <g class=\"piece\" {attrs}>")
        for role, z, r in item["circles"]:
            cx, cy = xy(z)
            lines.append(
                f'    <circle class="{role}" cx="{cx}" cy="{cy}" r="{_fmt(k * r)}" fill="none" {styles[role]}/>'
            )
        lines.append("  </g>")
    lines.append('  <g class="points">')
    for j, s in enumerate(dec.sheets):
        z = points[j]
        cx, cy = xy(z)
        y0 = z + shift
        lines.append(
            f'    <circle class="point" cx="{cx}" cy="{cy}" r="3" fill="black" data-branch="{s.branch + 1}" '
            f'data-k="{s.k}" data-re="{_data(y0.real)}" data-im="{_data(y0.imag)}"/>'
        )
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ export


def _rat(v) -> Optional[str]:
    return None if v is None else format_rational(v)


def piece_to_json(p: Piece) -> dict:
    out = {"id": p.id, "kind": p.kind, "rate": _rat(p.rate), "sheets": sorted(p.sheets), "orbit": p.orbit}
    if p.sector is not None:
        out["sector"] = p.sector
    if p.kind == "A":
        out["inner_rate"] = _rat(p.inner_rate)
    if p.kind in ("A", "D"):
        out["central"] = p.central
    if p.kind == "B":
        out["f"] = [[_rat(e), str(a)] for e, a in p.f]
        out["coefficients"] = [str(a) for a in p.coeffs]
        out["inserted"] = list(p.inserted)
        out.update(alpha=_rat(p.alpha), beta=_rat(p.beta), gamma=_rat(p.gamma))
    out["children"] = [piece_to_json(ch) for ch in p.children]
    return out


def decomposition_to_json(dec: PieceDecomposition) -> dict:
    return {
        "shear": dec.shear,
        "eps0": _rat(dec.params.eps0),
        "eta": _rat(dec.params.eta),
        "R": _rat(dec.params.R),
        "slopes": [str(s) for s in dec.slopes],
        "inventory": {k: v for k, v in sorted(dec.inventory().items())},
        "root": piece_to_json(dec.root),
    }


def inventory_text(dec: PieceDecomposition) -> str:
    inv = dec.inventory()
    lines = [
        f"shear: {dec.shear}",
        f"eps0 = {format_rational(dec.params.eps0)}, eta = {format_rational(dec.params.eta)}, "
        f"R = {format_rational(dec.params.R)}",
        f"pieces: B(1) {inv['B1']}, B {inv['B']}, A {inv['A']}, D {inv['D']}, total {sum(inv.values())}",
    ]
    for p in dec.pieces():
        if p.kind == "B":
            lines.append(
                f"  B rate {format_rational(p.rate)}: {p.holes} holes, alpha={_rat(p.alpha)}, "
                f"beta={_rat(p.beta)}, gamma={_rat(p.gamma)}, orbit {p.orbit}"
            )
    return "\n".join(lines)
