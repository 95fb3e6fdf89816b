import json
import re
from fractions import Fraction

import pytest

from curvelab import carrousel_geom as geom
from curvelab.parsing import parse_curve


def _kinds(dec):
    return dict(dec.inventory())


def test_inventory_of_E(E):
    dec = geom.decompose(E)
    assert _kinds(dec) == {"B1": 1, "B": 4, "A": 4, "D": 9}
    bs = sorted((p.rate, p.holes) for p in dec.pieces() if p.kind == "B")
    assert bs == [(Fraction(3, 2), 2), (Fraction(13, 6), 3), (Fraction(13, 6), 3), (Fraction(7, 3), 3)]


def test_constants_of_E(E):
    dec = geom.decompose(E)
    b = next(p for p in dec.pieces() if p.kind == "B" and p.rate == Fraction(3, 2))
    assert (b.alpha, b.beta, b.gamma) == (Fraction(1, 2), Fraction(7, 3), Fraction(1, 3))
    assert all(geom.check_constants(p) for p in dec.pieces() if p.kind == "B")
    assert dec.shear == 1


def test_sheared_cusp_and_smooth():
    dec = geom.decompose(parse_curve("y = x + x^(3/2)"))
    assert _kinds(dec) == {"B1": 1, "A": 1, "B": 1, "D": 2}
    (b,) = [p for p in dec.pieces() if p.kind == "B"]
    assert (b.rate, b.holes) == (Fraction(3, 2), 2)
    assert _kinds(geom.decompose(parse_curve("y = x"))) == {"B1": 1, "D": 1}


def test_auto_shear():
    c, lam = geom.auto_shear(parse_curve("y = x^2\ny = -x + x^3"))
    # slopes 0 and -1: shifting by 1 would collide, so 2 is used
    assert lam == 2
    assert sorted(str(b.tangent_slope()) for b in c) == ["1", "2"]


def test_align_inserts_inessential_level():
    pairing = geom.align_decompositions(parse_curve("y = x^(3/2)"), parse_curve("y = x^(3/2) + x^2"))
    assert pairing.insertions == [(1, 0, Fraction(2))]
    assert any(a.kind == "B" and a.rate == 2 for a, _ in pairing.pairs)
    for a, b in pairing.pairs:
        assert (a.kind, a.rate) == (b.kind, b.rate)
        if a.kind == "B":
            assert (a.alpha, a.beta, a.gamma) == (b.alpha, b.beta, b.gamma)


def test_align_rescaled(E):
    other = parse_curve("y = 5x^(3/2) - 2x^(13/6)\ny = -x^(7/3)")
    pairing = geom.align_decompositions(E, other)
    assert pairing.insertions == []
    assert len(pairing.pairs) == 18
    assert len(set(pairing.mapping().values())) == 18


def test_align_not_equivalent():
    with pytest.raises(geom.NotEquivalentError, match="not equivalent"):
        geom.align_decompositions(parse_curve("y = x^(3/2)"), parse_curve("y = x^(5/2)"))


def _points(svg):
    return [
        (int(b), complex(float(re_), float(im)))
        for b, re_, im in re.findall(r'class="point".*?data-branch="(\d+)".*?data-re="([^"]+)" data-im="([^"]+)"', svg)
    ]


def test_section_of_E(E):
    dec = geom.decompose(E)
    for t in (Fraction(1, 10), Fraction(1, 20), Fraction(1, 40)):
        pts = _points(geom.render_section(dec, t))
        assert len(pts) == 9
        two = [z for b, z in pts if b == 2]
        assert len(two) == 3
        # the branch-2 triple sits between the two branch-1 triples
        mid = sum(two) / 3
        ones = sorted((z for b, z in pts if b == 1), key=lambda z: z.real)
        assert ones[2].real < mid.real < ones[3].real


def test_section_smooth():
    svg = geom.render_section(parse_curve("y = x"), Fraction(1, 10))
    assert len(_points(svg)) == 1
    point = re.search(r'class="point" cx="([^"]+)" cy="([^"]+)"', svg).groups()
    cone = re.search(r'class="cone" cx="([^"]+)" cy="([^"]+)"', svg).groups()
    assert point == cone


def test_section_checks(E):
    dec = geom.decompose(E)
    assert geom.largest_verified_t(dec) == Fraction(1, 128)
    assert geom.check_section(dec, 1 / 128) == []
    assert geom.check_section(dec, 0.1)  # too coarse for the nominal constants


def test_render_range(E):
    with pytest.raises(ValueError):
        geom.render_section(E, Fraction(1, 2))


def test_json(E):
    data = json.loads(json.dumps(geom.decomposition_to_json(geom.decompose(E))))
    assert data["inventory"] == {"A": 4, "B": 4, "B1": 1, "D": 9}
    assert data["root"]["kind"] == "B1"
