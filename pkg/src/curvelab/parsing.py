"""Reader for the curve text format.

One branch per line, ``#`` starts a comment::

    y = x^(3/2) + x^(13/6)
    y = 2x + (1/2)i x^(5/2)
    param (w^4, w^6)
    param (w^2, w^3, w^5)        # space branch

Coefficients are Gaussian rationals written as products of rationals,
``i`` and parenthesised sums such as ``(1/2-3 i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .puiseux import Curve, CurveError, make_curve, normalize_branch
from .scalar import GaussianRational


class CurveSyntaxError(CurveError):
    def __init__(self, msg: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, column {col}: {msg}")


_TOKEN = re.compile(r"\s*(?:(\d+)|(param\b)|([a-zA-Z])|([-+*/^(),=]))")


@dataclass
class _Tok:
    kind: str  # 'num', 'name', 'op', 'end'
    text: str
    col: int


def _tokenize(text: str, lineno: int) -> list[_Tok]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CurveSyntaxError(f"unexpected character {text[pos]!r}", lineno, pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(_Tok("num", m.group(1), col))
        elif m.group(2):
            out.append(_Tok("name", "param", col))
        elif m.group(3):
            out.append(_Tok("name", m.group(3), col))
        else:
            out.append(_Tok("op", m.group(4), col))
        pos = m.end()
    out.append(_Tok("end", "", len(text) + 1))
    return out


@dataclass
class RawBranch:
    """A parsed line before normalization.

    ``kind == 'series'``: ``coords[0]`` holds ``(exponent, coeff)`` pairs in x.
    ``kind == 'param'``: ``n`` is the exponent of the first coordinate and
    ``coords`` the remaining coordinates as ``(int exponent, coeff)`` lists.
    """

    kind: str
    coords: list
    n: Optional[int] = None
    line: int = 0


class _Parser:
    def __init__(self, text: str, lineno: int):
        self.toks = _tokenize(text, lineno)
        self.pos = 0
        self.lineno = lineno

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise CurveSyntaxError(msg, self.lineno, tok.col)

    def accept(self, kind, text=None) -> Optional[_Tok]:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.pos += 1
            return t
        return None

    def expect(self, kind, text=None, what=None) -> _Tok:
        t = self.accept(kind, text)
        if t is None:
            found = self.tok.text or "end of line"
            self.error(f"expected {what or text or kind}, found {found!r}")
        return t

    # series := [sign] term {sign term}
    def series(self, var: Optional[str]) -> list:
        terms = []
        sign = 1
        if self.accept("op", "-"):
            sign = -1
        else:
            self.accept("op", "+")
        while True:
            coeff, exp = self.term(var)
            terms.append((exp, coeff * sign))
            if self.accept("op", "+"):
                sign = 1
            elif self.accept("op", "-"):
                sign = -1
            else:
                return terms

    def term(self, var: Optional[str]):
        coeff = GaussianRational(1)
        exp = Fraction(0)
        nfactors = 0
        while True:
            if nfactors and self.accept("op", "*"):
                if not self.starts_factor():
                    self.error("expected a factor after '*'")
            if not self.starts_factor():
                break
            c, e = self.factor(var)
            coeff = coeff * c
            exp += e
            nfactors += 1
        if nfactors == 0:
            self.error("expected a term")
        return coeff, exp

    def starts_factor(self) -> bool:
        t = self.tok
        return t.kind == "num" or (t.kind == "op" and t.text == "(") or (
            t.kind == "name" and t.text in ("i", "x", "w")
        )

    def factor(self, var):
        t = self.tok
        if t.kind == "num":
            self.pos += 1
            value = Fraction(int(t.text))
            if self.accept("op", "/"):
                den = self.expect("num", what="denominator")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                value /= int(den.text)
            return GaussianRational(value), Fraction(0)
        if self.accept("op", "("):
            inner = self.series(None)
            self.expect("op", ")")
            total = GaussianRational(0)
            for _, c in inner:
                total = total + c
            return total, Fraction(0)
        if t.kind == "name" and t.text == "i":
            self.pos += 1
            return GaussianRational(0, 1), Fraction(0)
        if t.kind == "name" and t.text in ("x", "w"):
            if var != t.text:
                self.error(f"unexpected variable {t.text!r}")
            self.pos += 1
            if self.accept("op", "^"):
                return GaussianRational(1), self.exponent()
            return GaussianRational(1), Fraction(1)
        self.error("expected a factor")

    def exponent(self) -> Fraction:
        if self.accept("op", "("):
            neg = bool(self.accept("op", "-"))
            num = self.expect("num", what="exponent")
            value = Fraction(int(num.text))
            if self.accept("op", "/"):
                den = self.expect("num", what="denominator")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                value /= int(den.text)
            self.expect("op", ")")
            return -value if neg else value
        num = self.expect("num", what="exponent")
        return Fraction(int(num.text))

    def line(self) -> RawBranch:
        if self.accept("name", "y"):
            self.expect("op", "=")
            terms = self.series("x")
            self.expect("end", what="end of line")
            return RawBranch("series", [terms], line=self.lineno)
        if self.accept("name", "param"):
            self.expect("op", "(")
            w_tok = self.expect("name", "w")
            if self.accept("op", "^"):
                n_tok = self.expect("num", what="natural number")
            else:
                n_tok = _Tok("num", "1", w_tok.col)
            n = int(n_tok.text)
            if n < 1:
                self.error("first coordinate must be w^n with n >= 1", n_tok)
            coords = []
            while self.accept("op", ","):
                coords.append(self.series("w"))
            if not coords:
                self.error("expected ',' and a polynomial")
            self.expect("op", ")")
            self.expect("end", what="end of line")
            for poly in coords:
                for e, _ in poly:
                    if e.denominator != 1 or e < 0:
                        raise CurveSyntaxError("polynomial exponents must be natural numbers", self.lineno, 1)
            return RawBranch("param", coords, n=n, line=self.lineno)
        self.error("expected 'y =' or 'param ('")


def parse_lines(text: str) -> list[RawBranch]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        out.append(_Parser(content, lineno).line())
    if not out:
        raise CurveSyntaxError("no branches found", 1, 1)
    return out


def _located(err: CurveError, line: int) -> CurveError:
    if isinstance(err, CurveSyntaxError):
        return err
    return type(err)(f"line {line}: {err}")


def parse_curve(text: str) -> Curve:
    """Parse a plane curve; raises :class:`CurveError` on invalid input."""
    branches = []
    for raw in parse_lines(text):
        try:
            if raw.kind == "series":
                branches.append(normalize_branch(raw.coords[0]))
            else:
                if len(raw.coords) != 1:
                    raise CurveError("space-curve branch in plane curve input")
                branches.append(normalize_branch(raw.coords[0], n=raw.n))
        except CurveSyntaxError:
            raise
        except CurveError as err:
            raise _located(err, raw.line) from None
    return make_curve(branches)


def read_curve(path) -> Curve:
    with open(path, encoding="utf-8") as fh:
        return parse_curve(fh.read())
