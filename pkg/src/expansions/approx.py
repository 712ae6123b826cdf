"""Approximation systems on power series germs.

Each system is configured by a *transform* and a *nonlinearity*:

* transform ``D`` (derivative), ``K`` (subtract the value at the center) or
  ``KD`` (derivative, then subtract its value at the center);
* nonlinearity ``power`` with a level-indexed exponent schedule
  ``alpha_i`` (germs with constant term 1), or ``logexp`` (germs with
  constant term 0).

One expansion level transforms the germ, reads off the leading coefficient
and multiplicity of the result, normalizes it to constant term 1, and applies
the nonlinearity (``(.)**alpha_i`` or ``log``).  Reconstruction undoes this:
apply the inverse nonlinearity (``(.)**(1/alpha_i)`` or ``exp``), restore the
leading data, and — for transforms involving ``D`` — integrate from the
center.  The emitted coefficients are :class:`~expansions.coefficients.ASCoef`
pairs ``(c, m)``, or :class:`ASCoef3` triples ``(b, c, m)`` for ``KD`` where
``b`` is the derivative at the center.

A transformed germ that is identically zero has multiplicity ``INF`` and
marks the neutral branch; a *truncated* germ whose known coefficients are all
zero cannot distinguish the two cases and raises
:class:`~expansions.errors.TruncationInconclusive`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Union

from .coefficients import ASCoef, ASCoef3, INF, ExtendedInt, is_infinite
from .core import ORDER_NONE, ExpansionSystem
from .errors import DomainError, TruncationInconclusive
from .series import PowerSeries

TRANSFORM_D = "D"
TRANSFORM_K = "K"
TRANSFORM_KD = "KD"

NL_POWER = "power"
NL_LOGEXP = "logexp"

AlphaSchedule = Callable[[int], Fraction]


def constant_alpha(value: object) -> AlphaSchedule:
    a = Fraction(value)
    return lambda i: a


def alpha_list(values: Sequence[object]) -> AlphaSchedule:
    """Schedule from a list; the last entry repeats forever."""
    vals = [Fraction(v) for v in values]
    if not vals:
        raise DomainError("alpha list must not be empty")
    return lambda i: vals[i] if i < len(vals) else vals[-1]


@dataclass(frozen=True)
class ASConfig:
    """Configuration of an approximation system.

    Attributes:
        transform: ``"D"``, ``"K"`` or ``"KD"``.
        nonlinearity: ``"power"`` or ``"logexp"``.
        alphas: exponent schedule, required for the power nonlinearity;
            every ``alphas(i)`` must be nonzero.
        center: expansion point of the germs.
        order: truncation order used when a kernel needs one.
    """

    transform: str
    nonlinearity: str
    alphas: Optional[AlphaSchedule] = None
    center: Fraction = field(default_factory=lambda: Fraction(0))
    order: int = 64

    def __post_init__(self) -> None:
        if self.transform not in (TRANSFORM_D, TRANSFORM_K, TRANSFORM_KD):
            raise DomainError(f"unknown transform {self.transform!r}")
        if self.nonlinearity not in (NL_POWER, NL_LOGEXP):
            raise DomainError(f"unknown nonlinearity {self.nonlinearity!r}")
        if self.nonlinearity == NL_POWER and self.alphas is None:
            raise DomainError("the power nonlinearity needs an alpha schedule")
        if self.order < 2:
            raise DomainError(f"order must be at least 2, got {self.order}")

    @property
    def constant_term(self) -> Fraction:
        """Constant term every germ in the system carries (1 for power, 0
        for log/exp — the nonlinearity's own fixed normalization)."""
        return Fraction(1) if self.nonlinearity == NL_POWER else Fraction(0)

    def alpha(self, i: int) -> Fraction:
        assert self.alphas is not None
        a = Fraction(self.alphas(i))
        if a == 0:
            raise DomainError(f"alpha({i}) = 0 is not invertible")
        return a


def multiplicity(series: PowerSeries) -> ExtendedInt:
    """Index of the first nonzero coefficient; ``INF`` for the exact zero
    series.

    Raises:
        TruncationInconclusive: for a truncated germ with no nonzero stored
            coefficient — it may or may not be zero.
    """
    for k, c in enumerate(series.coeffs):
        if c != 0:
            return k
    if series.exact:
        return INF
    raise TruncationInconclusive(
        f"all {len(series.coeffs)} known coefficients vanish; multiplicity "
        "cannot be certified"
    )


ASCoefficient = Union[ASCoef, ASCoef3]


class ApproximationSystem(ExpansionSystem):
    """Expansion system defined by an :class:`ASConfig` (see module docs)."""

    kind = "germ"
    coefficient_order_kind = ORDER_NONE

    def __init__(self, config: ASConfig, name: Optional[str] = None) -> None:
        self.config = config
        suffix = "logexp" if config.nonlinearity == NL_LOGEXP else "power"
        self.name = name or f"as-{config.transform.lower()}-{suffix}"

    # -- spaces ------------------------------------------------------------

    def neutral(self, i: int) -> PowerSeries:
        c = self.config
        if c.nonlinearity == NL_POWER:
            return PowerSeries.constant(c.center, 1)
        return PowerSeries.zero(c.center)

    def validate(self, i: int, y: Any) -> None:
        if not isinstance(y, PowerSeries):
            raise DomainError(f"expected PowerSeries, got {type(y).__name__}")
        if y.center != self.config.center:
            raise DomainError(
                f"germ centered at {y.center}, system at {self.config.center}"
            )
        if y.coefficient(0) != self.config.constant_term:
            raise DomainError(
                f"germ constant term {y.coefficient(0)} != "
                f"{self.config.constant_term} required by the {self.config.nonlinearity} "
                "normalization"
            )

    def is_neutral(self, i: int, y: PowerSeries) -> bool:
        nu = self.neutral(i)
        rest = y - nu
        if not rest.is_zero():
            return False
        if not rest.exact:
            raise TruncationInconclusive(
                "a truncated germ matching the neutral element on all known "
                "coefficients cannot be certified neutral"
            )
        return True

    # -- transform ----------------------------------------------------------

    def _transformed(self, y: PowerSeries) -> tuple[Optional[Fraction], PowerSeries]:
        c = self.config
        if c.transform == TRANSFORM_D:
            return None, y.differentiate()
        if c.transform == TRANSFORM_K:
            return None, y - PowerSeries.constant(c.center, y.coefficient(0))
        d = y.differentiate()
        b = d.coefficient(0)
        return b, d - PowerSeries.constant(c.center, b)

    def _unary(self, series: PowerSeries, exponent: Fraction) -> PowerSeries:
        """Apply the nonlinearity direction given by ``exponent`` semantics."""
        return series.power(exponent, self.config.order)

    # -- system maps ----------------------------------------------------------

    def project(self, i: int, y: PowerSeries) -> ASCoefficient:
        b, t = self._transformed(y)
        m = multiplicity(t)
        c = Fraction(0) if is_infinite(m) else t.coefficient(m)
        if b is None:
            return ASCoef(c=c, m=m)
        return ASCoef3(b=b, c=c, m=m)

    def expand(self, i: int, y: PowerSeries) -> PowerSeries:
        cfg = self.config
        _, t = self._transformed(y)
        m = multiplicity(t)
        if is_infinite(m):
            return self.neutral(i + 1)
        normalized = t
        for _ in range(m):
            normalized = normalized.shift_down()
        normalized = normalized.scale(1 / t.coefficient(m))
        if cfg.nonlinearity == NL_POWER:
            return normalized.power(cfg.alpha(i), cfg.order)
        return normalized.log(cfg.order)

    def reconstruct(
        self, i: int, c: ASCoefficient, tail: PowerSeries
    ) -> Optional[PowerSeries]:
        cfg = self.config
        if cfg.transform == TRANSFORM_KD:
            if not isinstance(c, ASCoef3):
                raise DomainError(f"KD systems need ASCoef3 coefficients, got {c!r}")
            b: Optional[Fraction] = c.b
        else:
            if not isinstance(c, ASCoef):
                raise DomainError(
                    f"{cfg.transform} systems need ASCoef coefficients, got {c!r}"
                )
            b = None

        if is_infinite(c.m):
            if c.c != 0 or not self.is_neutral(i + 1, tail):
                return None
            transformed: PowerSeries = PowerSeries.zero(cfg.center)
        else:
            if c.c == 0:
                return None  # a leading coefficient cannot vanish
            if cfg.transform in (TRANSFORM_K, TRANSFORM_KD) and c.m < 1:
                return None  # these transforms kill the constant term
            if cfg.nonlinearity == NL_POWER:
                u = tail.power(1 / cfg.alpha(i), cfg.order)
            else:
                u = tail.exp(cfg.order)
            for _ in range(c.m):
                u = u.shift_up()
            transformed = u.scale(c.c)

        conv = cfg.constant_term
        if cfg.transform == TRANSFORM_K:
            return PowerSeries.constant(cfg.center, conv) + transformed
        if b is not None:
            transformed = transformed + PowerSeries.constant(cfg.center, b)
        return transformed.integrate(conv)


def detect_cycle(values: Sequence[Any], max_period: int) -> Optional[int]:
    """Smallest eventual period of ``values``, or ``None``.

    A period ``p`` qualifies when, after its minimal pre-period ``s``, the
    observed window still contains two full repetitions (``s + 2p <= len``);
    anything shorter is not evidence of periodicity.
    """
    n = len(values)
    for p in range(1, max_period + 1):
        s = n - p
        while s > 0 and values[s - 1 + p] == values[s - 1]:
            s -= 1
        if s + 2 * p <= n:
            return p
    return None


def germ_from_polynomial(coeffs: Sequence[object], center: object = 0) -> PowerSeries:
    """Exact germ from ascending coefficients in powers of ``(x - center)``."""
    return PowerSeries.exact_poly(center, [Fraction(c) for c in coeffs])
