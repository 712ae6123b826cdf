"""Expansion systems on series-like elements.

Four families live here:

* the Taylor system on power series germs (coefficient peel-off),
* Newton systems on polynomials driven by the forward, backward and reflected
  difference operators, reconstructing through the matching factorial bases,
* the Fourier system on trigonometric polynomials, peeling mode pairs
  ``+-i`` at level ``i``,
* a norm-restricted Taylor system on polynomials whose reconstruction is
  genuinely partial — the standard source of improper convergents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, List, Optional, Tuple

from .coefficients import ComplexRational
from .core import ORDER_NONE, ORDER_STANDARD, ExpansionSystem
from .errors import DomainError, TruncationInconclusive
from .polynomials import Polynomial, sup_norm_le
from .series import PowerSeries
from .trig import TrigPolynomial


class TaylorSystem(ExpansionSystem):
    """Coefficient peel-off on power series germs at a fixed center.

    ``project`` reads the constant term and ``expand`` divides the rest by
    ``(x - center)``, so the ``n``-th convergent of a germ is its Taylor
    polynomial with ``n`` terms (degree ``n - 1``).  Reconstruction is total.
    """

    name = "taylor"
    kind = "series"
    coefficient_order_kind = ORDER_STANDARD

    def __init__(self, center: object = 0) -> None:
        self.center = Fraction(center)

    def neutral(self, i: int) -> PowerSeries:
        return PowerSeries.zero(self.center)

    def validate(self, i: int, y: Any) -> None:
        if not isinstance(y, PowerSeries):
            raise DomainError(f"expected PowerSeries, got {type(y).__name__}")
        if y.center != self.center:
            raise DomainError(f"germ centered at {y.center}, system at {self.center}")

    def project(self, i: int, y: PowerSeries) -> Fraction:
        return y.coefficient(0)

    def expand(self, i: int, y: PowerSeries) -> PowerSeries:
        return (y - PowerSeries.constant(self.center, y.coefficient(0))).shift_down()

    def reconstruct(
        self, i: int, c: Fraction, tail: PowerSeries
    ) -> Optional[PowerSeries]:
        return tail.shift_up(c)

    def is_neutral(self, i: int, y: PowerSeries) -> bool:
        if not y.is_zero():
            return False
        if not y.exact:
            raise TruncationInconclusive(
                "an all-zero truncated germ cannot be certified neutral"
            )
        return True


def binomial_basis(k: int) -> Polynomial:
    """``x(x-1)...(x-k+1) / k!`` — forward-difference antiderivative basis."""
    acc = Polynomial.of(1)
    for j in range(k):
        acc = acc * Polynomial.of(-j, 1)
    return acc * Fraction(1, _factorial(k))


def rising_basis(k: int) -> Polynomial:
    """``x(x+1)...(x+k-1) / k!`` — backward-difference antiderivative basis."""
    acc = Polynomial.of(1)
    for j in range(k):
        acc = acc * Polynomial.of(j, 1)
    return acc * Fraction(1, _factorial(k))


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


class _NewtonBase(ExpansionSystem):
    kind = "polynomial"
    coefficient_order_kind = ORDER_STANDARD

    def neutral(self, i: int) -> Polynomial:
        return Polynomial(())

    def validate(self, i: int, y: Any) -> None:
        if not isinstance(y, Polynomial):
            raise DomainError(f"expected Polynomial, got {type(y).__name__}")

    def project(self, i: int, y: Polynomial) -> Fraction:
        return y(Fraction(0))


class NewtonForwardSystem(_NewtonBase):
    """Forward-difference peel-off: value at 0, then ``p(x+1) - p(x)``.

    Reconstruction inverts the difference through the binomial basis, so the
    ``n``-th convergent interpolates the original polynomial at ``0..n-1``.
    """

    name = "newton-forward"

    def expand(self, i: int, y: Polynomial) -> Polynomial:
        return y.shift(1) - y

    def reconstruct(self, i: int, c: Fraction, tail: Polynomial) -> Polynomial:
        out = Polynomial.of(c)
        stage = tail
        k = 1
        while not stage.is_zero():
            out = out + binomial_basis(k) * stage(Fraction(0))
            stage = stage.shift(1) - stage
            k += 1
        return out


class NewtonBackwardSystem(_NewtonBase):
    """Backward-difference peel-off: value at 0, then ``p(x) - p(x-1)``.

    The inverse runs through the rising-factorial basis ``x(x+1)..(x+k-1)/k!``
    (whose backward difference is the previous basis element).
    """

    name = "newton-backward"

    def expand(self, i: int, y: Polynomial) -> Polynomial:
        return y - y.shift(-1)

    def reconstruct(self, i: int, c: Fraction, tail: Polynomial) -> Polynomial:
        out = Polynomial.of(c)
        stage = tail
        k = 1
        while not stage.is_zero():
            out = out + rising_basis(k) * stage(Fraction(0))
            stage = stage - stage.shift(-1)
            k += 1
        return out


class NewtonReflectedSystem(_NewtonBase):
    """Conjugate of the forward system under ``y(x) -> -y(-x)``, ``c -> -c``.

    Its expansion step is ``p(x-1) - p(x)`` (the negated backward difference);
    reconstruction is delegated to the forward system through the conjugation.
    """

    name = "newton-reflected"

    _forward = NewtonForwardSystem()

    @staticmethod
    def _conj(y: Polynomial) -> Polynomial:
        return y.reflect()

    def expand(self, i: int, y: Polynomial) -> Polynomial:
        return y.shift(-1) - y

    def reconstruct(self, i: int, c: Fraction, tail: Polynomial) -> Polynomial:
        inner = self._forward.reconstruct(i, -c, self._conj(tail))
        return self._conj(inner)


class FourierSystem(ExpansionSystem):
    """Mode-pair peel-off on trigonometric polynomials.

    Level ``i`` projects the amplitude pair of modes ``-i`` and ``+i`` and
    removes those modes; level 0 carries the single mode-0 amplitude twice
    and removes it once.  Reconstruction is partial: the tail must be free of
    the modes being restored (and the level-0 pair must agree).
    """

    name = "fourier"
    kind = "trig"
    coefficient_order_kind = ORDER_NONE

    def neutral(self, i: int) -> TrigPolynomial:
        return TrigPolynomial.zero()

    def validate(self, i: int, y: Any) -> None:
        if not isinstance(y, TrigPolynomial):
            raise DomainError(f"expected TrigPolynomial, got {type(y).__name__}")

    def project(
        self, i: int, y: TrigPolynomial
    ) -> Tuple[ComplexRational, ComplexRational]:
        if i == 0:
            a = y.amplitude(0)
            return (a, a)
        return (y.amplitude(-i), y.amplitude(i))

    def expand(self, i: int, y: TrigPolynomial) -> TrigPolynomial:
        if i == 0:
            return y.without_modes(0)
        return y.without_modes(-i, i)

    def reconstruct(
        self,
        i: int,
        c: Tuple[ComplexRational, ComplexRational],
        tail: TrigPolynomial,
    ) -> Optional[TrigPolynomial]:
        lo, hi = c
        if i == 0:
            if not (lo - hi).is_zero():
                return None
            if not tail.amplitude(0).is_zero():
                return None
            return tail + TrigPolynomial.basis(0, lo)
        if not tail.amplitude(-i).is_zero() or not tail.amplitude(i).is_zero():
            return None
        return tail + TrigPolynomial.of({-i: lo, i: hi})


class NormTaylorSystem(ExpansionSystem):
    """Taylor peel-off on polynomials restricted by a sup-norm bound.

    A polynomial belongs to the system iff every stage of its coefficient
    peel-off has sup-norm at most 1 on ``[0, 1]`` (the largest subset of that
    norm ball carried into itself by the expansion step).  Projection and
    expansion look like the Taylor system's; reconstruction must *decide*
    whether the rebuilt polynomial still satisfies the bound at every stage,
    and returns ``None`` when it does not — the reference source of improper
    convergents.
    """

    name = "norm-taylor"
    kind = "polynomial"
    coefficient_order_kind = ORDER_STANDARD

    bound = Fraction(1)

    @staticmethod
    def _stage_down(y: Polynomial) -> Polynomial:
        return Polynomial(y.coeffs[1:])

    def _member(self, y: Polynomial) -> bool:
        stage = y
        while True:
            if not sup_norm_le(stage, self.bound):
                return False
            if stage.is_zero():
                return True
            stage = self._stage_down(stage)

    def neutral(self, i: int) -> Polynomial:
        return Polynomial(())

    def validate(self, i: int, y: Any) -> None:
        if not isinstance(y, Polynomial):
            raise DomainError(f"expected Polynomial, got {type(y).__name__}")
        if not self._member(y):
            raise DomainError(
                f"{y} has a peel-off stage with sup-norm above {self.bound} on [0, 1]"
            )

    def project(self, i: int, y: Polynomial) -> Fraction:
        return y.coefficient(0)

    def expand(self, i: int, y: Polynomial) -> Polynomial:
        return self._stage_down(y)

    def reconstruct(
        self, i: int, c: Fraction, tail: Polynomial
    ) -> Optional[Polynomial]:
        candidate = Polynomial.of(c, *tail.coeffs)
        if not self._member(candidate):
            return None
        return candidate


def taylor_stages(y: Polynomial) -> List[Polynomial]:
    """All coefficient peel-off stages of a polynomial, down to zero."""
    out = [y]
    while not out[-1].is_zero():
        out.append(Polynomial(out[-1].coeffs[1:]))
    return out
