"""Expansion systems on the real unit interval ``[0, 1)`` with neutral 0.

All systems here run on two interchangeable element backends:

* exact ``Fraction`` values, and
* :class:`~expansions.certified.Interval` enclosures for irrational inputs.

Coefficient extraction uses certified floors/ceilings, so with the interval
backend a too-narrow precision budget surfaces as
:class:`~expansions.errors.PrecisionExhausted` rather than a wrong digit.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence, Tuple, Union

from .certified import Interval
from .coefficients import INF, NEG_INF, ExtendedInt, is_infinite
from .core import ORDER_REVERSED, ORDER_STANDARD, ExpansionSystem
from .errors import DomainError, PrecisionExhausted

Real = Union[Fraction, Interval]


# -- backend dispatch helpers -------------------------------------------------


def _zero_like(value: Real) -> Real:
    return Interval.exact(0) if isinstance(value, Interval) else Fraction(0)


def certainly_zero(value: Real) -> bool:
    """Certified zero test; raises on an interval that straddles zero."""
    if isinstance(value, Interval):
        return value.sign() == 0
    return value == 0


def certified_lt(a: Real, b: Real) -> bool:
    """Certified ``a < b`` across backends."""
    if isinstance(a, Interval) or isinstance(b, Interval):
        ia = a if isinstance(a, Interval) else Interval.exact(a)
        return ia.lt(b)
    return a < b


def rfloor(value: Real) -> int:
    return value.floor() if isinstance(value, Interval) else math.floor(value)


def rceil(value: Real) -> int:
    return value.ceil() if isinstance(value, Interval) else math.ceil(value)


def _overlap(a: Real, b: Real) -> bool:
    ia = a if isinstance(a, Interval) else Interval.exact(a)
    ib = b if isinstance(b, Interval) else Interval.exact(b)
    return ia.lo <= ib.hi and ib.lo <= ia.hi


class _UnitIntervalSystem(ExpansionSystem):
    """Shared behaviour of systems whose every level is ``[0, 1)``."""

    kind = "real"

    def neutral(self, i: int) -> Fraction:
        return Fraction(0)

    def validate(self, i: int, y: Any) -> None:
        if isinstance(y, Interval):
            # Refute membership only when the whole enclosure lies outside.
            if y.hi < 0 or y.lo >= 1:
                raise DomainError(f"element {y} lies outside [0, 1)")
            return
        if not isinstance(y, Fraction):
            raise DomainError(f"expected Fraction or Interval, got {type(y).__name__}")
        if not 0 <= y < 1:
            raise DomainError(f"element {y} lies outside [0, 1)")

    def is_neutral(self, i: int, y: Any) -> bool:
        return certainly_zero(y)

    def elements_equal(self, i: int, a: Any, b: Any) -> bool:
        if isinstance(a, Interval) or isinstance(b, Interval):
            # Enclosures cannot certify equality; report non-separation.
            return _overlap(a, b)
        return a == b

    def termination_magnitude(self, y: Fraction) -> Optional[int]:
        """Strictly decreasing positive certificate along rational expansion,
        where the system has one (``None`` otherwise)."""
        return None


class BaseSystem(_UnitIntervalSystem):
    """Positional expansion in an integer base ``b >= 2``.

    ``project`` emits the leading digit, ``expand`` the fractional remainder
    of ``b*y``, so the ``n``-th convergent of ``y`` is its ``n``-digit
    truncation.  Reconstruction is total (the digit map is a bijection onto
    digits x tails).

    An optional ``digit_permutation`` relabels the *emitted* digit while the
    expansion step keeps using the true digit; this breaks monotonicity of
    the coefficient map without touching convergents' values.
    """

    coefficient_order_kind = ORDER_STANDARD

    def __init__(
        self, base: int, digit_permutation: Optional[Sequence[int]] = None
    ) -> None:
        if base < 2:
            raise DomainError(f"base must be >= 2, got {base}")
        self.base = base
        self.name = f"base{base}"
        self._sigma = None
        self._sigma_inv = None
        if digit_permutation is not None:
            sigma = list(digit_permutation)
            if sorted(sigma) != list(range(base)):
                raise DomainError(
                    f"digit_permutation must permute 0..{base - 1}, got {sigma}"
                )
            self._sigma = sigma
            self._sigma_inv = [0] * base
            for d, image in enumerate(sigma):
                self._sigma_inv[image] = d
            self.name = f"base{base}-shuffled"

    def _digit(self, i: int, y: Any) -> int:
        d = rfloor(self.base * y)
        if not 0 <= d < self.base:
            raise DomainError(f"element {y} lies outside [0, 1)")
        return d

    def project(self, i: int, y: Any) -> int:
        d = self._digit(i, y)
        return self._sigma[d] if self._sigma is not None else d

    def expand(self, i: int, y: Any) -> Any:
        return self.base * y - self._digit(i, y)

    def reconstruct(self, i: int, c: int, tail: Any) -> Optional[Any]:
        if not isinstance(c, int) or not 0 <= c < self.base:
            raise DomainError(f"coefficient {c!r} is not a base-{self.base} digit")
        d = self._sigma_inv[c] if self._sigma_inv is not None else c
        return (d + tail) / self.base


class ContinuedFractionSystem(_UnitIntervalSystem):
    """Regular continued fractions on ``[0, 1)``.

    Coefficients are the partial quotients ``floor(1/y) >= 1``, with ``INF``
    for the neutral element; the coefficient order is the standard one with
    ``INF`` largest.  The pair ``(1, neutral)`` is outside the image (its
    preimage would be 1), the single improperness this system has.
    """

    name = "cf"
    coefficient_order_kind = ORDER_STANDARD

    def project(self, i: int, y: Any) -> ExtendedInt:
        if certainly_zero(y):
            return INF
        return rfloor(1 / y)

    def expand(self, i: int, y: Any) -> Any:
        if certainly_zero(y):
            return _zero_like(y)
        q = 1 / y
        return q - rfloor(q)

    def reconstruct(self, i: int, c: ExtendedInt, tail: Any) -> Optional[Any]:
        if c is INF:
            if certainly_zero(tail):
                return _zero_like(tail)
            return None
        if not isinstance(c, int) or c < 1:
            raise DomainError(f"coefficient {c!r} is not a partial quotient")
        if c == 1 and certainly_zero(tail):
            return None  # preimage would be 1, outside [0, 1)
        return 1 / (c + tail)

    def termination_magnitude(self, y: Fraction) -> Optional[int]:
        return y.numerator + y.denominator


class _ReciprocalCeilingSystem(_UnitIntervalSystem):
    """Shared coefficient map of the unit-fraction systems.

    Both emit ``ceil(1/y)`` (which is >= 2 on ``(0, 1)``) and ``INF`` at the
    neutral element.  Their coefficient spaces carry the *reversed* order —
    under it the coefficient maps become monotone increasing and ``INF`` is
    smallest — and their rational expansions strictly decrease numerators.
    """

    coefficient_order_kind = ORDER_REVERSED

    def project(self, i: int, y: Any) -> ExtendedInt:
        if certainly_zero(y):
            return INF
        return rceil(1 / y)

    def termination_magnitude(self, y: Fraction) -> Optional[int]:
        return y.numerator

    def _check_coeff(self, c: ExtendedInt) -> None:
        if not isinstance(c, int) or c < 2:
            raise DomainError(f"coefficient {c!r} is not a unit-fraction index")


class EgyptianSystem(_ReciprocalCeilingSystem):
    """Greedy unit-fraction (Egyptian) expansion: split off the largest unit
    fraction ``1/c <= y`` and expand the difference."""

    name = "egyptian"

    def expand(self, i: int, y: Any) -> Any:
        if certainly_zero(y):
            return _zero_like(y)
        return y - Fraction(1, rceil(1 / y))

    def reconstruct(self, i: int, c: ExtendedInt, tail: Any) -> Optional[Any]:
        if c is INF:
            if certainly_zero(tail):
                return _zero_like(tail)
            return None
        self._check_coeff(c)
        # ceil(1/y) == c exactly when 1/c <= y < 1/(c-1), i.e. the remainder
        # lies below 1/(c(c-1)).
        if not certified_lt(tail, Fraction(1, c * (c - 1))):
            return None
        return Fraction(1, c) + tail


class EngelSystem(_ReciprocalCeilingSystem):
    """Engel series expansion: same coefficient map as the Egyptian system,
    but the remainder is rescaled (``y*c - 1``), which forces the emitted
    coefficients of any one element to be non-decreasing."""

    name = "engel"

    def expand(self, i: int, y: Any) -> Any:
        if certainly_zero(y):
            return _zero_like(y)
        return y * rceil(1 / y) - 1

    def reconstruct(self, i: int, c: ExtendedInt, tail: Any) -> Optional[Any]:
        if c is INF:
            if certainly_zero(tail):
                return _zero_like(tail)
            return None
        self._check_coeff(c)
        # 1/c <= (1 + tail)/c < 1/(c-1) exactly when tail < 1/(c-1).
        if not certified_lt(tail, Fraction(1, c - 1)):
            return None
        return (1 + tail) / c


class FExpansionSystem(_UnitIntervalSystem):
    """Expansion driven by a scaling map ``f`` on ``[0, 1)``.

    ``project`` emits ``floor(f(y))`` (with infinities passed through) and
    ``expand`` the fractional part; reconstruction applies the inverse of
    ``f`` after an image-membership check.  ``f(x) = b*x`` reproduces the
    base-``b`` system and ``f(x) = 1/x`` (with ``f(0) = INF``) the continued
    fraction system.

    Args:
        name: registry/report identifier.
        f: the scaling map; may return ``INF``/``NEG_INF``.
        f_inv: inverse of ``f`` on its image.
        in_image: certified predicate for membership of ``c + tail`` in
            ``f([0,1) \\ {0})``.
        infinity_coefficient: coefficient emitted at the neutral element when
            ``f(0)`` is infinite (``None`` when it is finite).
    """

    coefficient_order_kind = ORDER_STANDARD

    def __init__(
        self,
        name: str,
        f: Callable[[Real], Any],
        f_inv: Callable[[Real], Real],
        in_image: Callable[[Real], bool],
        ) -> None:
        self.name = name
        self._f = f
        self._f_inv = f_inv
        self._in_image = in_image
        at_zero = f(Fraction(0))
        if is_infinite(at_zero):
            self._neutral_coeff: Optional[ExtendedInt] = at_zero
        elif isinstance(at_zero, Fraction) and at_zero.denominator == 1:
            self._neutral_coeff = None
        else:
            raise DomainError(
                f"f(0) = {at_zero} is neither an integer nor infinite; "
                "the neutral element would not expand to itself"
            )

    def project(self, i: int, y: Any) -> ExtendedInt:
        if self._neutral_coeff is not None and certainly_zero(y):
            return self._neutral_coeff
        v = self._f(y)
        if is_infinite(v):
            return v
        return rfloor(v)

    def expand(self, i: int, y: Any) -> Any:
        if self._neutral_coeff is not None and certainly_zero(y):
            return _zero_like(y)
        v = self._f(y)
        if is_infinite(v):
            return _zero_like(y)
        return v - rfloor(v)

    def reconstruct(self, i: int, c: ExtendedInt, tail: Any) -> Optional[Any]:
        if is_infinite(c):
            if self._neutral_coeff is not c:
                return None
            if certainly_zero(tail):
                return _zero_like(tail)
            return None
        if not isinstance(c, int):
            raise DomainError(f"coefficient {c!r} is not an integer")
        w = c + tail
        if not self._in_image(w):
            return None
        return self._f_inv(w)


def base_f_expansion(base: int) -> FExpansionSystem:
    """The base-``base`` system presented as an f-expansion (``f(x) = b*x``)."""
    return FExpansionSystem(
        name=f"f-linear{base}",
        f=lambda y: base * y,
        f_inv=lambda w: w / base,
        in_image=lambda w: not certified_lt(w, Fraction(0))
        and certified_lt(w, Fraction(base)),
    )


def reciprocal_f_expansion() -> FExpansionSystem:
    """The continued fraction system presented as an f-expansion (``f(x) = 1/x``)."""

    def f(y: Real) -> Any:
        if certainly_zero(y):
            return INF
        return 1 / y

    return FExpansionSystem(
        name="f-reciprocal",
        f=f,
        f_inv=lambda w: 1 / w,
        in_image=lambda w: certified_lt(Fraction(1), w),
    )


def magnitude_prefix(y: Fraction) -> Tuple[int, Fraction]:
    """Decimal magnitude split: the least integer ``c`` with ``y / 10**c < 1``,
    paired with that quotient.

    The quotient lands in ``[1/10, 1)`` for positive ``y``, so it can be fed
    to any system on the unit interval; ``y = 0`` maps to ``(0, 0)``.
    """
    y = Fraction(y)
    if y < 0:
        raise DomainError(f"magnitude split needs a non-negative value, got {y}")
    if y == 0:
        return 0, Fraction(0)
    c = 0
    while y >= Fraction(10) ** c:
        c += 1
    while y < Fraction(10) ** (c - 1):
        c -= 1
    return c, y / Fraction(10) ** c
