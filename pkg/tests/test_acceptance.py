"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line; the lines are repeated in the
pytest terminal summary.  Run ``python3 tests/test_acceptance.py`` to see
them without the rest of the suite.
"""

import math
import random
import re
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from curvelab import carrousel_geom as geom
from curvelab import probe
from curvelab.carrousel_tree import EggersLeaf, canonical_code, curve_eggers, curve_tree
from curvelab.cli import main
from curvelab.contact import intersection_multiplicity, q_map, verify_ultrametric
from curvelab.parsing import parse_curve
from curvelab.projection import (
    candidate_directions,
    find_generic_direction,
    generic_projection_topology,
    is_generic,
    parse_space_curve,
    project,
)
from curvelab.puiseux import characteristic_exponents, make_curve, normalize_branch
from curvelab.splice import curve_splice, edge_determinants, linking_number

sys.path.insert(0, str(Path(__file__).parent))
from randcurves import random_curve  # noqa: E402

E_TEXT = "y = x^(3/2) + x^(13/6)\ny = x^(7/3)\n"
RESULTS: list = []


@contextmanager
def criterion(number: int, title: str):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        line = f"FAIL criterion {number}: {title} ({time.perf_counter() - t0:.2f} s)"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS criterion {number}: {title} ({time.perf_counter() - t0:.2f} s)"
    RESULTS.append(line)
    print(line)


@pytest.fixture
def E():
    return parse_curve(E_TEXT)


def _find(tree, q):
    return next(v for v in tree.walk() if v.q == q)


def test_criterion_1_carrousel_tree():
    with criterion(1, "carrousel tree of E"):
        t0 = time.perf_counter()
        t = curve_tree(parse_curve(E_TEXT))
        elapsed = time.perf_counter() - t0
        assert t.q == 1 and len(t.children) == 1
        (v,) = t.children
        assert v.q == Fraction(3, 2)
        kids = sorted((ch.q, [leaf.is_leaf for leaf in ch.children]) for ch in v.children)
        assert kids == [
            (Fraction(13, 6), [True] * 3),
            (Fraction(13, 6), [True] * 3),
            (Fraction(7, 3), [True] * 3),
        ]
        assert canonical_code(t) == "1[3/2[13/6[L,L,L],13/6[L,L,L],7/3[L,L,L]]]"
        assert elapsed < 1.0


def test_criterion_2_eggers(E):
    with criterion(2, "Eggers decorations of E"):
        e = curve_eggers(E)
        top = _find(e, Fraction(3, 2))
        assert (top.m, top.n, top.r, top.s) == (3, 2, 2, 1)
        extra = top.extra_child()
        assert (extra.m, extra.n, extra.r, extra.s) == (14, 6, 3, 5)
        assert f"{extra.m}/{extra.n}" == "14/6"
        other = _find(e, Fraction(13, 6))
        assert (other.m, other.n, other.r, other.s) == (13, 6, 3, 4)
        # the extra edge carries the label r = 2 of its top vertex
        assert [flag for ch, flag in top.children if ch is extra] == [True]
        assert top.r == 2
        labels = sorted(f"{v.m}/{v.n}" for v in e.walk())
        assert labels == ["1/1", "13/6", "14/6", "3/2"]
        for v in (extra, other):
            assert [type(ch) for ch, _ in v.children] == [EggersLeaf]


def test_criterion_3_splice(E, tmp_path, capsys):
    with criterion(3, "splice diagram of E with linking and determinant oracles"):
        d = curve_splice(E)
        by_child = {d.vertices[e.b].q: e for e in d.edges if d.vertices[e.b].kind == "node"}
        assert (by_child[(3, 2)].wa, by_child[(3, 2)].wb) == (1, 3)
        assert (by_child[(14, 6)].wa, by_child[(14, 6)].wb) == (2, 7)
        assert (by_child[(13, 6)].wa, by_child[(13, 6)].wb) == (1, 22)
        assert sorted(e.wa for e in d.edges if d.vertices[e.b].kind == "stub") == [3, 3]
        assert [e.wa for e in d.edges if d.vertices[e.b].kind == "arrow"] == [1, 1]
        # oracle 1: linking of the two arrows is the intersection multiplicity
        assert linking_number(d, d.arrow_of(0).id, d.arrow_of(1).id) == 27 == intersection_multiplicity(E, 0, 1)
        # oracle 2: a test branch through the 13/6 vertex
        test = normalize_branch([(Fraction(3, 2), 1), (Fraction(13, 6), 2)])
        ext = make_curve(list(E.branches) + [test])
        de = curve_splice(ext)
        assert linking_number(de, de.arrow_of(0).id, de.arrow_of(2).id) == 66 == 3 * 22
        assert intersection_multiplicity(ext, 0, 2) == 66
        dets = sorted(v for _, v in edge_determinants(d))
        assert dets == [1, 4, 5] and all(v > 0 for v in dets)
        path = tmp_path / "E.crv"
        path.write_text(E_TEXT)
        assert main(["splice", str(path), "--verify"]) == 0
        out = capsys.readouterr().out
        assert "bottom weight 22 above 13/6: s + r*r'*m' = 4 + 3*2*3" in out
        assert "bottom weight 22 at 13/6 confirmed" in out and "66 = 3*22" in out


def test_criterion_4_property_suite():
    with criterion(4, "1000 random curves: ultrametric, exponents, multiplicities, linking"):
        rng = random.Random(20240611)
        violations = 0
        for _ in range(1000):
            c = random_curve(rng, max_branches=3, max_n=12, max_exp=40)
            assert len(c) <= 3 and all(b.n <= 12 for b in c)
            qm = q_map(c)
            violations += len(verify_ultrametric(qm))
            for b in range(len(c)):
                rows = [j for j, s in enumerate(qm.sheets) if s.branch == b]
                within = {qm[j, k] for j, k in combinations(rows, 2)}
                assert within == set(characteristic_exponents(c.branches[b]))
            d = curve_splice(c, qm)
            for a, b in combinations(range(len(c)), 2):
                total = sum(qm[j, k] for j, s in enumerate(qm.sheets) if s.branch == a
                            for k, t in enumerate(qm.sheets) if t.branch == b)
                assert Fraction(total).denominator == 1
                im = intersection_multiplicity(c, a, b, qm)
                assert linking_number(d, d.arrow_of(a).id, d.arrow_of(b).id) == im
        assert violations == 0


EQUIV_SUITE = [
    # coefficient rescalings
    (E_TEXT, "y = 5x^(3/2) - 2x^(13/6)\ny = -x^(7/3)", 0),
    ("y = x^(3/2)", "y = 3i x^(3/2)", 0),
    ("y = x^2\ny = -x^2", "y = 5x^2\ny = -(1/2)x^2", 0),
    # inessential terms
    ("y = x^(3/2)", "y = x^(3/2) + x^2", 0),
    (E_TEXT, "y = x^(3/2) + x^2 + x^(13/6)\ny = x^(7/3)", 0),
    ("y = x^(5/2)", "y = x^(5/2) + x^3", 0),
    # different topology
    ("y = x^(3/2) + x^(13/6)", "y = x^(3/2) + x^(11/6)", 1),
    ("y = x^2\ny = -x^2", "y = x^2\ny = x^2 + x^3", 1),
    ("y = x^(3/2)", "y = x^(5/2)", 1),
    ("y = x\ny = 2x", "y = x\ny = x + x^2", 1),
]


def test_criterion_5_equivalence(tmp_path, capsys):
    with criterion(5, "equivalence decisions on the 10-pair suite"):
        for idx, (a, b, code) in enumerate(EQUIV_SUITE):
            pa, pb = tmp_path / f"a{idx}.crv", tmp_path / f"b{idx}.crv"
            pa.write_text(a)
            pb.write_text(b)
            assert main(["equiv", str(pa), str(pb)]) == code
            out = capsys.readouterr().out
            assert out.startswith("equivalent" if code == 0 else "not equivalent (")
        pa, pb = tmp_path / "a8.crv", tmp_path / "b8.crv"
        main(["equiv", str(pa), str(pb)])
        assert capsys.readouterr().out == "not equivalent (characteristic exponents {3/2} vs {5/2})\n"


def test_criterion_6_projection():
    with criterion(6, "projection verdicts and direction independence"):
        s1 = parse_space_curve("param (w^2, w^3, w^5)")
        assert str(is_generic(s1, (1, 0))) == "GENERIC"
        assert str(is_generic(s1, (0, 1))) == "FAILS_BRANCH(1, 3)"
        assert find_generic_direction(s1) == (1, 0)
        cusp_code = canonical_code(curve_tree(parse_curve("y = x^(3/2)")))
        assert generic_projection_topology(s1) == cusp_code
        codes = set()
        count = 0
        for d in candidate_directions(2, max_norm=2):
            if is_generic(s1, d).generic:
                count += 1
                codes.add(canonical_code(curve_tree(project(s1, d).curve)))
        assert count > 0 and codes == {cusp_code}


def test_criterion_7_probe(E):
    with criterion(7, "numeric q-map, tree recovery and ratio limit"):
        est = probe.estimate_qmap(E)
        exact = q_map(E)
        fitted = set()
        for j, k in combinations(range(9), 2):
            assert abs(est.q[j, k] - float(exact[j, k])) <= 0.05
            fitted.add(float(exact[j, k]))
        assert sorted(fitted) == pytest.approx([1.5, 2.16667, 2.33333], abs=1e-5)
        rec = probe.recover_tree_numeric(probe.sample_grid(E), probe.DEFAULT_GRID, 24)
        assert canonical_code(rec.tree) == canonical_code(curve_tree(E))
        c1 = parse_curve("y = x^(3/2) + x^(13/6)")
        c2 = parse_curve("y = 2x^(3/2) + x^(13/6)")
        stats = probe.bilipschitz_ratio_experiment(c1, c2)
        at = [p for p in stats.pairs if p.i0 == Fraction(3, 2)]
        assert at
        for p in at:
            assert p.predicted == 0.5
            assert abs(p.fitted - 0.5) <= 0.02


def _clusters(points, count):
    """Single-linkage split into ``count`` groups (Kruskal, stopping early)."""
    parent = list(range(len(points)))

    def root(i):
        while parent[i] != i:
            i = parent[i]
        return i

    groups = len(points)
    for _, i, j in sorted((abs(a[1] - b[1]), i, j) for (i, a), (j, b) in combinations(enumerate(points), 2)):
        if groups == count:
            break
        ri, rj = root(i), root(j)
        if ri != rj:
            parent[ri] = rj
            groups -= 1
    out: dict = {}
    for i, p in enumerate(points):
        out.setdefault(root(i), []).append(p)
    return list(out.values())


def test_criterion_8_sections(E, tmp_path, capsys):
    with criterion(8, "sections of E: clusters, slopes and piece inventory"):
        path = tmp_path / "E.crv"
        path.write_text(E_TEXT)
        ts = (0.1, 0.05, 0.025)
        assert main(["sections", str(path), "--at", "0.1,0.05,0.025", "--svg", str(tmp_path / "sec-{t}.svg")]) == 0
        capsys.readouterr()
        inter, intra = [], []
        for t in ts:
            svg = (tmp_path / f"sec-{t:g}.svg").read_text()
            pts = [
                (int(b), complex(float(x), float(y)))
                for b, x, y in re.findall(r'data-branch="(\d+)" data-k="\d+" data-re="([^"]+)" data-im="([^"]+)"', svg)
            ]
            assert len(pts) == 9
            clusters = _clusters(pts, 3)
            assert sorted(len(c) for c in clusters) == [3, 3, 3]
            spread = max(abs(a - b) for c in clusters for (_, a), (_, b) in combinations(c, 2))
            gap = min(abs(a - b) for c1, c2 in combinations(clusters, 2) for _, a in c1 for _, b in c2)
            assert gap > spread
            centre = [c for c in clusters if {b for b, _ in c} == {2}]
            assert len(centre) == 1
            outer = [c for c in clusters if c is not centre[0]]
            assert all({b for b, _ in c} == {1} for c in outer)
            cen = [sum(z for _, z in c) / 3 for c in (outer[0], centre[0], outer[1])]
            # the branch-2 triple lies between the two branch-1 triples
            assert abs(cen[1] - (cen[0] + cen[2]) / 2) < 0.25 * abs(cen[0] - cen[2])
            inter.append(abs(cen[0] - cen[2]))
            intra.append(max(abs(a - b) for _, a in outer[0] for _, b in outer[0]))
        logt = [math.log(t) for t in ts]
        for series, target in ((inter, 1.5), (intra, 13 / 6)):
            for i, j in combinations(range(3), 2):
                slope = (math.log(series[i]) - math.log(series[j])) / (logt[i] - logt[j])
                assert abs(slope - target) <= 0.05 * target
        inv = geom.decompose(E).inventory()
        assert dict(inv) == {"B1": 1, "B": 4, "A": 4, "D": 9}


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
