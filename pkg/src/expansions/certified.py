"""Certified real arithmetic on closed intervals with exact rational endpoints.

An :class:`Interval` encloses one real number.  Field operations are exact
(endpoints stay rational, enclosures never silently widen); irrational
constructors (:func:`sqrt_interval`, :func:`pi_interval`, :func:`e_interval`)
take an explicit ``bits`` budget and return a dyadic enclosure of width at most
``2**-bits``.  Predicates (floor, sign, comparison) either answer with
certainty or raise :class:`~expansions.errors.PrecisionExhausted` — they never
guess.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PrecisionExhausted

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` with exact ``Fraction`` endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    @staticmethod
    def exact(value: object) -> "Interval":
        f = Fraction(value)
        return Interval(f, f)

    # -- queries ---------------------------------------------------------

    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Fraction) -> bool:
        return self.lo <= value <= self.hi

    # -- arithmetic (exact, never widens beyond the true image) ----------

    def _coerce(self, other: object) -> "Interval":
        if isinstance(other, Interval):
            return other
        if isinstance(other, (int, Fraction)):
            return Interval.exact(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            if self.lo == 0 == self.hi:
                raise ZeroDivisionError("reciprocal of exact zero")
            raise PrecisionExhausted(
                f"cannot invert interval straddling zero: [{self.lo}, {self.hi}]"
            )
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other: object) -> "Interval":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, n: int) -> "Interval":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).reciprocal()
        if n == 0:
            return Interval.exact(1)
        a, b = self.lo ** n, self.hi ** n
        if n % 2 == 0 and self.lo < 0 < self.hi:
            return Interval(_ZERO, max(a, b))
        return Interval(min(a, b), max(a, b))

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(_ZERO, max(-self.lo, self.hi))

    # -- certified predicates --------------------------------------------

    def sign(self) -> int:
        """Certified sign (-1, 0, +1) of the enclosed number."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == 0 == self.hi:
            return 0
        raise PrecisionExhausted(
            f"sign undecidable on [{self.lo}, {self.hi}]"
        )

    def floor(self) -> int:
        fl, fh = math.floor(self.lo), math.floor(self.hi)
        if fl == fh:
            return fl
        raise PrecisionExhausted(
            f"floor undecidable on [{self.lo}, {self.hi}]"
        )

    def ceil(self) -> int:
        cl, ch = math.ceil(self.lo), math.ceil(self.hi)
        if cl == ch:
            return cl
        raise PrecisionExhausted(
            f"ceiling undecidable on [{self.lo}, {self.hi}]"
        )

    def lt(self, other: object) -> bool:
        """Certified ``self < other``; raises if the enclosures overlap."""
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        raise PrecisionExhausted(
            f"order of [{self.lo}, {self.hi}] and [{o.lo}, {o.hi}] undecidable"
        )

    def __float__(self) -> float:
        return float(self.midpoint())

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


def _dyadicize(lo: Fraction, hi: Fraction, bits: int) -> Interval:
    """Round outward to the dyadic grid with step ``2**-bits``."""
    scale = 1 << bits
    lo_d = Fraction(math.floor(lo * scale), scale)
    hi_d = Fraction(math.ceil(hi * scale), scale)
    return Interval(lo_d, hi_d)


def sqrt_interval(value: object, bits: int) -> Interval:
    """Enclosure of ``sqrt(value)`` of width at most ``2**-bits``.

    Exact (width 0) when ``value`` is the square of a rational.
    """
    q = Fraction(value)
    if q < 0:
        raise DomainError(f"sqrt of negative value {q}")
    if q == 0:
        return Interval.exact(0)
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Interval.exact(Fraction(rn, rd))
    if bits < 1:
        raise DomainError(f"bits must be positive, got {bits}")
    # isqrt of the numerator of q scaled by 4**bits gives a one-ulp bracket
    # of sqrt(q) * 2**bits.
    scaled = q.numerator * (1 << (2 * bits)) // q.denominator
    s = math.isqrt(scaled)
    denom = 1 << bits
    return Interval(Fraction(s, denom), Fraction(s + 1, denom))


def _atan_inv_enclosure(x: int, bits: int) -> Interval:
    """Enclosure of ``atan(1/x)`` for integer ``x >= 2`` via the alternating
    Taylor series, truncated once the next term is below ``2**-bits``."""
    threshold = Fraction(1, 1 << bits)
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < threshold:
            # Alternating with decreasing terms: the tail is bounded by the
            # first omitted term and has its sign.
            if k % 2 == 0:
                return Interval(total, total + term)
            return Interval(total - term, total)
        total = total + term if k % 2 == 0 else total - term
        k += 1


def pi_interval(bits: int) -> Interval:
    """Enclosure of pi of width at most ``2**-bits`` (Machin's formula)."""
    if bits < 1:
        raise DomainError(f"bits must be positive, got {bits}")
    guard = bits + 8
    enc = 16 * _atan_inv_enclosure(5, guard) - 4 * _atan_inv_enclosure(239, guard)
    return _dyadicize(enc.lo, enc.hi, bits + 2)


def e_interval(bits: int) -> Interval:
    """Enclosure of e of width at most ``2**-bits`` (factorial series)."""
    if bits < 1:
        raise DomainError(f"bits must be positive, got {bits}")
    threshold = Fraction(1, 1 << (bits + 8))
    total = Fraction(0)
    fact = 1
    k = 0
    while True:
        total += Fraction(1, fact)
        # Tail bound: sum_{j>k} 1/j! < 2/(k+1)!.
        tail = Fraction(2, fact * (k + 1))
        if tail < threshold:
            return _dyadicize(total, total + tail, bits + 2)
        k += 1
        fact *= k
