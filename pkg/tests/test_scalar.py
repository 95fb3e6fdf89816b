from fractions import Fraction

import pytest

from curvelab.scalar import (
    I,
    ZERO,
    GaussianRational,
    RootOfUnityTag,
    format_rational,
    sqrt_bounds,
    tagged,
    tagged_difference_is_zero,
    tagged_equal,
    unity_in_gaussians,
)


@pytest.mark.parametrize(
    "N, m, value",
    [(6, 3, GaussianRational(-1)), (3, 1, None), (12, 9, -I), (4, 1, I), (8, 0, GaussianRational(1))],
)
def test_unity_in_gaussians(N, m, value):
    assert unity_in_gaussians(N, m) == value


def test_unity_bad_order():
    with pytest.raises(ValueError):
        unity_in_gaussians(0, 1)


def test_tagged_equal_examples():
    assert tagged_equal(tagged(1, 6, 3), tagged(-1, 6, 0))
    for c in (1, Fraction(-3, 7), GaussianRational(2, 5)):
        assert not tagged_equal(tagged(c, 3, 1), tagged(c, 3, 0))
    assert tagged_equal(tagged(2 * I, 8, 2), tagged(-2, 8, 0))


def test_tagged_equal_mixed_orders():
    # zeta_4 = zeta_8^2
    assert tagged(1, 4, 1) == tagged(1, 8, 2)
    assert tagged(1, 4, 1) != tagged(1, 8, 1)
    assert tagged(3, 2, 1) == tagged(-3)


def test_zero_handling():
    assert ZERO == ZERO
    assert tagged(0, 5, 2).is_zero
    assert ZERO != tagged(1)
    assert (tagged(1, 3, 1) * ZERO).is_zero


def test_tag_arithmetic():
    t = RootOfUnityTag(6, 5) * RootOfUnityTag(4, 1)
    assert (t.order, t.residue) == (12, 1)
    assert RootOfUnityTag(6, 13).residue == 1
    assert RootOfUnityTag(3, 2).power(3).residue == 0


def test_difference_is_zero():
    assert tagged_difference_is_zero(GaussianRational(1), GaussianRational(-1), RootOfUnityTag(2, 1))
    assert not tagged_difference_is_zero(GaussianRational(1), GaussianRational(1), RootOfUnityTag(3, 1))


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z.inverse() == 1
    assert z.norm() == 5
    assert str(GaussianRational(Fraction(1, 2), -3)) == "(1/2-3 i)"
    assert str(GaussianRational(7)) == "7"
    with pytest.raises(TypeError):
        GaussianRational.coerce(1 + 2j)


def test_format_and_sqrt():
    assert format_rational(Fraction(13, 6)) == "13/6"
    assert format_rational(4) == "4"
    assert format_rational(float("inf")) == "inf"
    lo, hi = sqrt_bounds(Fraction(2))
    assert lo * lo <= 2 <= hi * hi
    assert sqrt_bounds(Fraction(9, 4)) == (Fraction(3, 2), Fraction(3, 2))
