"""Coefficient-space values shared by several systems.

Coefficient spaces in this package are concrete Python values: plain ``int``
digits, ``Fraction`` amplitudes, pairs, or the small records defined here.  Two
extras are needed beyond stdlib types:

* extended integers — several systems emit "infinity" as the coefficient of a
  neutral tail (continued fractions, unit-fraction systems), so ``INF`` and
  ``NEG_INF`` are totally ordered against ``int``/``Fraction``;
* exact Gaussian rationals (:class:`ComplexRational`) for trigonometric
  polynomial amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class _Infinity:
    """Signed infinity, comparable with ``int`` and ``Fraction``.

    Only the two module-level singletons ``INF`` and ``NEG_INF`` exist;
    equality is identity.
    """

    __slots__ = ("_sign",)

    def __init__(self, sign: int) -> None:
        self._sign = sign

    def __repr__(self) -> str:
        return "INF" if self._sign > 0 else "NEG_INF"

    def __str__(self) -> str:
        return "inf" if self._sign > 0 else "-inf"

    def __neg__(self) -> "_Infinity":
        return NEG_INF if self._sign > 0 else INF

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (_Infinity, int, Fraction)):
            return self._sign < 0
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (_Infinity, int, Fraction)):
            return self._sign > 0
        return NotImplemented

    def __le__(self, other: object) -> bool:
        lt = self.__lt__(other)
        if lt is NotImplemented:
            return NotImplemented
        return lt or self is other

    def __ge__(self, other: object) -> bool:
        gt = self.__gt__(other)
        if gt is NotImplemented:
            return NotImplemented
        return gt or self is other

    def __hash__(self) -> int:
        return hash(("infinity", self._sign))


INF = _Infinity(1)
NEG_INF = _Infinity(-1)

ExtendedInt = Union[int, _Infinity]


def is_infinite(value: object) -> bool:
    """True iff ``value`` is ``INF`` or ``NEG_INF``."""
    return isinstance(value, _Infinity)


@dataclass(frozen=True)
class ASCoef:
    """Coefficient emitted by a D- or K-transform approximation system.

    Attributes:
        c: leading coefficient of the transformed element.
        m: its multiplicity (index of the leading term); ``INF`` on the
            neutral branch.
    """

    c: Fraction
    m: ExtendedInt


@dataclass(frozen=True)
class ASCoef3:
    """Coefficient emitted by a K.D-transform approximation system.

    Attributes:
        b: derivative of the element at the expansion point.
        c: leading coefficient of the fully transformed element.
        m: its multiplicity; ``INF`` on the neutral branch.
    """

    b: Fraction
    c: Fraction
    m: ExtendedInt


@dataclass(frozen=True)
class ComplexRational:
    """Exact Gaussian rational ``re + im*i``."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re: object, im: object = 0) -> "ComplexRational":
        return ComplexRational(Fraction(re), Fraction(im))

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ComplexRational":
        return ComplexRational(-self.re, -self.im)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "ComplexRational") -> "ComplexRational":
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero complex rational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im > 0:
            return f"{self.re}+{self.im} i"
        return f"{self.re}-{-self.im} i"


CZERO = ComplexRational(Fraction(0), Fraction(0))
CONE = ComplexRational(Fraction(1), Fraction(0))
