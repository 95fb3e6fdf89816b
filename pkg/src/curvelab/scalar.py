"""Exact scalars: rationals, extended rationals, Gaussian rationals and
root-of-unity tagged values.

Rationals are :class:`fractions.Fraction`.  The extended value ``INFINITY``
is ``math.inf``, which compares correctly against every ``Fraction``.

A :class:`TaggedScalar` is a value ``c * zeta_N**m`` where ``c`` is a nonzero
Gaussian rational and ``zeta_N = exp(2*pi*i/N)``.  Equality of two tagged
values is decidable because the only roots of unity lying in Q(i) are
1, -1, i and -i.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

INFINITY = math.inf

RationalLike = Union[int, Fraction]


def is_infinite(q) -> bool:
    return isinstance(q, float) and math.isinf(q)


def format_rational(q) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral); infinity as ``inf``."""
    if is_infinite(q):
        return "inf"
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if text == "inf":
        raise ValueError("infinity is not a rational")
    return Fraction(text)


def sqrt_bounds(x: Fraction, digits: int = 12) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(x) <= hi`` with ``hi - lo <= 10**-digits``."""
    if x < 0:
        raise ValueError("negative radicand")
    scale = 10**digits
    # floor(sqrt(x) * scale) == isqrt(floor(x * scale**2))
    r = math.isqrt(math.floor(x * scale * scale))
    lo = Fraction(r, scale)
    hi = lo if lo * lo == x else Fraction(r + 1, scale)
    return lo, hi


@dataclass(frozen=True)
class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact")
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"({format_rational(self.re)}{sign}{format_rational(abs(self.im))} i)"

    def __repr__(self):
        return f"GaussianRational({self})"


I = GaussianRational(0, 1)
ONE = GaussianRational(1, 0)


def _gauss(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(Fraction(value), Fraction(0))
    return NotImplemented


@lru_cache(maxsize=4096)
def _unity(N: int, m: int) -> Optional[GaussianRational]:
    m %= N
    d = N // math.gcd(N, m)  # multiplicative order of zeta_N**m
    if d not in (1, 2, 4):
        return None
    k = (m * d // N) % d
    if d == 1:
        return ONE
    if d == 2:
        return -ONE
    return I if k == 1 else -I


def unity_in_gaussians(N: int, m: int) -> Optional[GaussianRational]:
    """Value of ``zeta_N**m`` if it lies in Q(i), else ``None``.

    >>> unity_in_gaussians(6, 3)
    GaussianRational(-1)
    >>> unity_in_gaussians(3, 1) is None
    True
    """
    if N < 1:
        raise ValueError("order must be positive")
    return _unity(N, m % N)


@dataclass(frozen=True)
class RootOfUnityTag:
    """``zeta_N**m`` with the residue reduced mod ``N``."""

    order: int
    residue: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "residue", self.residue % self.order)

    def rescaled(self, N: int) -> "RootOfUnityTag":
        if N % self.order:
            raise ValueError(f"{N} is not a multiple of {self.order}")
        return RootOfUnityTag(N, self.residue * (N // self.order))

    def angle(self) -> Fraction:
        """Argument as a fraction of a full turn, in [0, 1)."""
        return Fraction(self.residue, self.order)

    def __mul__(self, other: "RootOfUnityTag") -> "RootOfUnityTag":
        N = math.lcm(self.order, other.order)
        return RootOfUnityTag(N, self.rescaled(N).residue + other.rescaled(N).residue)

    def __truediv__(self, other: "RootOfUnityTag") -> "RootOfUnityTag":
        N = math.lcm(self.order, other.order)
        return RootOfUnityTag(N, self.rescaled(N).residue - other.rescaled(N).residue)

    def power(self, k: int) -> "RootOfUnityTag":
        return RootOfUnityTag(self.order, self.residue * k)

    def __complex__(self):
        return cmath.exp(2j * math.pi * self.residue / self.order)

    def __str__(self):
        return f"zeta_{self.order}^{self.residue}"


@dataclass(frozen=True, eq=False)
class TaggedScalar:
    """``coeff * zeta_N**m``; ``coeff is None`` encodes ZERO.

    Equality (``==``) is exact complex-number equality, see :func:`tagged_equal`.
    """

    coeff: Optional[GaussianRational]
    tag: RootOfUnityTag = RootOfUnityTag(1, 0)

    def __post_init__(self):
        if self.coeff is not None:
            c = GaussianRational.coerce(self.coeff)
            object.__setattr__(self, "coeff", c if c else None)

    @property
    def is_zero(self) -> bool:
        return self.coeff is None

    def __mul__(self, other):
        if isinstance(other, TaggedScalar):
            if self.is_zero or other.is_zero:
                return ZERO
            return TaggedScalar(self.coeff * other.coeff, self.tag * other.tag)
        other = _gauss(other)
        if other is NotImplemented:
            return other
        if self.is_zero or not other:
            return ZERO
        return TaggedScalar(self.coeff * other, self.tag)

    __rmul__ = __mul__

    def __neg__(self):
        return ZERO if self.is_zero else TaggedScalar(-self.coeff, self.tag)

    def modulus_squared(self) -> Fraction:
        return Fraction(0) if self.is_zero else self.coeff.norm()

    def __complex__(self):
        if self.is_zero:
            return 0j
        return complex(self.coeff) * complex(self.tag)

    def __eq__(self, other):
        if not isinstance(other, TaggedScalar):
            return NotImplemented
        return tagged_equal(self, other)

    __hash__ = None

    def __str__(self):
        if self.is_zero:
            return "0"
        if self.tag.residue == 0:
            return str(self.coeff)
        return f"{self.coeff}*{self.tag}"

    def __repr__(self):
        return f"TaggedScalar({self})"


ZERO = TaggedScalar(None)


def tagged(c, N: int = 1, m: int = 0) -> TaggedScalar:
    return TaggedScalar(GaussianRational.coerce(c), RootOfUnityTag(N, m))


def tagged_equal(a: TaggedScalar, b: TaggedScalar) -> bool:
    """Exact test ``a == b`` as complex numbers.

    With ``a = c_a zeta^{m_a}`` and ``b = c_b zeta^{m_b}`` over a common
    order, equality holds iff ``zeta^{m_b - m_a}`` is Gaussian and equals
    ``c_a / c_b``.
    """
    if a.is_zero or b.is_zero:
        return a.is_zero and b.is_zero
    if a.tag.order == b.tag.order:
        N, ma, mb = a.tag.order, a.tag.residue, b.tag.residue
    else:
        N = math.lcm(a.tag.order, b.tag.order)
        ma = a.tag.residue * (N // a.tag.order)
        mb = b.tag.residue * (N // b.tag.order)
    if ma == mb:
        return a.coeff == b.coeff
    u = _unity(N, (mb - ma) % N)
    if u is None:
        return False
    # a == b  <=>  c_a == c_b * u
    return a.coeff == b.coeff * u


def tagged_difference_is_zero(A: GaussianRational, B: GaussianRational, tag: RootOfUnityTag) -> bool:
    """Decide ``A - zeta**m * B == 0`` exactly."""
    return tagged_equal(TaggedScalar(A), TaggedScalar(B, tag))
