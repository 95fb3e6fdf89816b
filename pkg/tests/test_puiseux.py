from fractions import Fraction

import pytest

from curvelab.contact import truncation_exponent
from curvelab.parsing import CurveSyntaxError, parse_curve
from curvelab.puiseux import (
    Branch,
    CurveError,
    NonReducedError,
    characteristic_exponents,
    essential_exponents,
    normalize_branch,
    render_curve,
    same_branch,
    sheet_coefficient,
    sheets,
    shear,
    truncate_branch,
)
from curvelab.scalar import GaussianRational, I, tagged


def test_parse_example(E):
    b1, b2 = E.branches
    assert (b1.n, b1.terms) == (6, ((9, GaussianRational(1)), (13, GaussianRational(1))))
    assert (b2.n, b2.terms) == (3, ((7, GaussianRational(1)),))


def test_parse_smooth():
    (b,) = parse_curve("y = 2*x").branches
    assert (b.n, b.terms) == (1, ((1, GaussianRational(2)),))


def test_tangent_to_y_axis():
    with pytest.raises(CurveError, match="tangent to y-axis"):
        parse_curve("y = x^(1/2)")


def test_normalize_param_primitive():
    b = parse_curve("param (w^4, w^6)").branches[0]
    assert (b.n, b.terms) == (2, ((3, GaussianRational(1)),))


def test_normalize_gaussian_coefficients():
    b = parse_curve("y = 2x + (1/2)i x^(5/2)").branches[0]
    assert b.n == 2
    assert b.terms == ((2, GaussianRational(2)), (5, I * Fraction(1, 2)))


def test_syntax_errors_are_located():
    with pytest.raises(CurveSyntaxError) as err:
        parse_curve("y = x^(3/2)\ny = x $ 2")
    assert err.value.line == 2
    with pytest.raises(CurveSyntaxError):
        parse_curve("# only a comment\n")


def test_non_reduced():
    with pytest.raises(NonReducedError):
        parse_curve("y = x^(3/2)\ny = -x^(3/2)")
    # x^(3/2) + x^(5/2) and its conjugate are the same branch, x^(3/2) - x^(5/2) is not
    with pytest.raises(NonReducedError):
        parse_curve("y = x^(3/2) + x^(5/2)\ny = -x^(3/2) - x^(5/2)")
    assert len(parse_curve("y = x^(3/2) + x^(5/2)\ny = x^(3/2) - x^(5/2)")) == 2


@pytest.mark.parametrize(
    "n, support, expected",
    [(6, [9, 13], [9, 13]), (2, [3, 4], [3]), (1, [1, 2, 5], [])],
)
def test_essential_exponents(n, support, expected):
    assert essential_exponents(Branch(n, tuple((i, 1) for i in support))) == expected


def test_characteristic_exponents(E, smooth):
    assert characteristic_exponents(E[0]) == [Fraction(3, 2), Fraction(13, 6)]
    assert characteristic_exponents(E[1]) == [Fraction(7, 3)]
    assert characteristic_exponents(smooth[0]) == []


def test_sheets(E, smooth, cusp):
    assert len(sheets(E)) == 9
    assert len(sheets(smooth)) == 1
    assert len(sheets(cusp)) == 2


def test_sheet_coefficient(E):
    s = sheets(E)[1]  # branch 1, k = 1
    assert sheet_coefficient(E, s, Fraction(3, 2)) == tagged(-1)
    assert sheet_coefficient(E, s, Fraction(2)).is_zero


def test_truncation_exponent(E, cusp, smooth):
    assert truncation_exponent(E, 0) == Fraction(13, 6)
    assert truncation_exponent(cusp, 0) == Fraction(3, 2)
    assert truncation_exponent(smooth, 0) == 1


def test_same_branch_conjugates():
    b = normalize_branch([(Fraction(3, 2), 1), (Fraction(7, 4), 1)])
    conj = normalize_branch([(Fraction(3, 2), -1), (Fraction(7, 4), I)])
    assert same_branch(b, conj)
    assert not same_branch(b, normalize_branch([(Fraction(3, 2), 1), (Fraction(7, 4), 2)]))


def test_truncate_and_shear(E):
    t = truncate_branch(E[0], Fraction(3, 2))
    assert (t.n, t.support) == (2, (3,))
    sh = shear(E, 1)
    assert sh[0].tangent_slope() == 1


def test_render_roundtrip(E):
    again = parse_curve(render_curve(E))
    assert again == E
    c = parse_curve("y = 2x - (1/2)i x^(5/2)\ny = (1+i) x^3")
    assert parse_curve(render_curve(c)) == c
