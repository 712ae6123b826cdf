"""Expression parsing for CLI inputs.

One small LL(1) grammar serves every element kind; a context object decides
what names mean and which operations the parsed values support:

* ``real``: exact rationals, promoted to certified intervals by ``pi``, ``e``
  and non-square ``sqrt``;
* ``series``/``germ``: power-series germs about a base point (``... at c``
  suffix), with ``exp``/``log``/``sqrt`` usable on composite arguments and
  ``sin``/``cos``/``tan``/``cosh``/``pow(a)`` on the variable itself;
* ``polynomial``: exact polynomials in ``x``;
* ``trig``: trigonometric polynomials built from the basis ``E(k)`` and the
  imaginary unit ``i``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' '-'? INTEGER)?
    atom   := NUMBER | NAME ('(' expr (',' expr)* ')')? | '(' expr ')'

Parse errors carry the offending position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence

from .certified import Interval, e_interval, pi_interval, sqrt_interval
from .coefficients import CONE, ComplexRational
from .errors import DomainError, ParseError, UnsupportedInContext
from .polynomials import Polynomial
from .series import PowerSeries
from .trig import TrigPolynomial

# -- tokens ------------------------------------------------------------------

_PUNCT = "+-*/^(),"


@dataclass(frozen=True)
class Token:
    kind: str  # "num" | "name" | "punct" | "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                if j >= n or not text[j].isdigit():
                    raise ParseError("digits must follow a decimal point", j)
                while j < n and text[j].isdigit():
                    j += 1
            tokens.append(Token("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], i))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(Token("end", "", n))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: Sequence[Token]) -> None:
        self.tokens = tokens
        self.k = 0

    def peek(self) -> Token:
        return self.tokens[self.k]

    def advance(self) -> Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def expect_punct(self, text: str) -> Token:
        if not self.at_punct(text):
            tok = self.peek()
            raise ParseError(f"expected {text!r}, found {tok.text or 'end'!r}", tok.pos)
        return self.advance()

    def parse_expr(self, env: "_Env") -> Any:
        value = self.parse_term(env)
        while self.at_punct("+") or self.at_punct("-"):
            op = self.advance().text
            rhs = self.parse_term(env)
            value = env.add(value, rhs) if op == "+" else env.sub(value, rhs)
        return value

    def parse_term(self, env: "_Env") -> Any:
        value = self.parse_unary(env)
        while self.at_punct("*") or self.at_punct("/"):
            op = self.advance().text
            rhs = self.parse_unary(env)
            value = env.mul(value, rhs) if op == "*" else env.div(value, rhs)
        return value

    def parse_unary(self, env: "_Env") -> Any:
        if self.at_punct("-"):
            self.advance()
            return env.neg(self.parse_unary(env))
        if self.at_punct("+"):
            self.advance()
            return self.parse_unary(env)
        return self.parse_power(env)

    def parse_power(self, env: "_Env") -> Any:
        base = self.parse_atom(env)
        if self.at_punct("^"):
            self.advance()
            sign = 1
            if self.at_punct("-"):
                self.advance()
                sign = -1
            tok = self.peek()
            if tok.kind != "num" or "." in tok.text:
                raise ParseError("exponent must be an integer literal", tok.pos)
            self.advance()
            return env.pow(base, sign * int(tok.text))
        return base

    def parse_atom(self, env: "_Env") -> Any:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return env.number(Fraction(tok.text))
        if tok.kind == "name":
            self.advance()
            return env.name(self, tok)
        if self.at_punct("("):
            self.advance()
            value = self.parse_expr(env)
            self.expect_punct(")")
            return value
        raise ParseError(f"expected a value, found {tok.text or 'end'!r}", tok.pos)

    def parse_full(self, env: "_Env") -> Any:
        value = self.parse_expr(env)
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return value


# -- environments ------------------------------------------------------------


class _Env:
    """Context-specific meaning of literals, names and operators."""

    def number(self, value: Fraction) -> Any:
        raise NotImplementedError

    def name(self, parser: _Parser, tok: Token) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def sub(self, a: Any, b: Any) -> Any:
        return a - b

    def neg(self, a: Any) -> Any:
        return -a

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def div(self, a: Any, b: Any) -> Any:
        return a / b

    def pow(self, a: Any, k: int) -> Any:
        raise NotImplementedError

    def _parse_paren_arg(self, parser: _Parser, env: "_Env") -> Any:
        parser.expect_punct("(")
        value = parser.parse_expr(env)
        parser.expect_punct(")")
        return value


def _sqrt_exact(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        raise DomainError(f"sqrt of negative value {value}")
    rn, rd = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if rn * rn == value.numerator and rd * rd == value.denominator:
        return Fraction(rn, rd)
    return None


class _ScalarEnv(_Env):
    def __init__(self, bits: int = 256, exact_only: bool = False,
                 variables: Optional[dict] = None) -> None:
        self.bits = bits
        self.exact_only = exact_only
        self.variables = variables or {}

    def number(self, value: Fraction) -> Any:
        return value

    def _inexact(self, tok: Token) -> None:
        if self.exact_only:
            raise ParseError(f"{tok.text} is not exact here", tok.pos)

    def name(self, parser: _Parser, tok: Token) -> Any:
        if tok.text in self.variables:
            return self.variables[tok.text]
        if tok.text == "pi":
            self._inexact(tok)
            return pi_interval(self.bits)
        if tok.text == "e":
            self._inexact(tok)
            return e_interval(self.bits)
        if tok.text == "sqrt":
            arg = self._parse_paren_arg(parser, self)
            if isinstance(arg, Fraction):
                exact = _sqrt_exact(arg)
                if exact is not None:
                    return exact
                self._inexact(tok)
                return sqrt_interval(arg, self.bits)
            self._inexact(tok)
            return Interval(
                sqrt_interval(arg.lo, self.bits).lo,
                sqrt_interval(arg.hi, self.bits).hi,
            )
        raise ParseError(f"unknown name {tok.text!r}", tok.pos)

    def div(self, a: Any, b: Any) -> Any:
        try:
            return a / b
        except ZeroDivisionError:
            raise DomainError("division by zero") from None

    def pow(self, a: Any, k: int) -> Any:
        if k >= 0:
            return a ** k
        if isinstance(a, Interval):
            return (a ** (-k)).reciprocal()
        return a ** k


class _SeriesEnv(_Env):
    def __init__(self, center: Fraction, order: int, bits: int = 256) -> None:
        self.center = center
        self.order = order
        self.bits = bits

    def number(self, value: Fraction) -> PowerSeries:
        return PowerSeries.constant(self.center, value)

    def _x(self) -> PowerSeries:
        return PowerSeries.exact_poly(self.center, (self.center, 1))

    def _require_x(self, arg: PowerSeries, tok: Token) -> None:
        if arg != self._x():
            raise UnsupportedInContext(
                f"{tok.text} accepts only the bare variable as argument"
            )

    def _table(self, fill: Callable[[List[Fraction]], None]) -> PowerSeries:
        coeffs = [Fraction(0)] * (self.order + 1)
        fill(coeffs)
        return PowerSeries.truncated(self.center, coeffs)

    def name(self, parser: _Parser, tok: Token) -> PowerSeries:
        text = tok.text
        if text == "x":
            return self._x()
        if text in ("series", "poly"):
            coeffs = self._coeff_list(parser)
            if text == "poly":
                return PowerSeries.exact_poly(self.center, coeffs)
            return PowerSeries.truncated(self.center, coeffs)
        if text == "pow":
            exponent = self._parse_paren_arg(
                parser, _ScalarEnv(self.bits, exact_only=True)
            )
            if not isinstance(exponent, Fraction):
                raise ParseError("pow needs an exact rational exponent", tok.pos)
            return self._x().power(exponent, self.order)
        if text in ("exp", "log", "sqrt"):
            arg = self._x()
            if parser.at_punct("("):
                arg = self._parse_paren_arg(parser, self)
            if text == "exp":
                return arg.exp(self.order)
            if text == "log":
                return arg.log(self.order)
            return arg.power(Fraction(1, 2), self.order)
        if text in ("sin", "cos", "tan", "cosh"):
            if parser.at_punct("("):
                self._require_x(self._parse_paren_arg(parser, self), tok)
            if self.center != 0:
                raise DomainError(
                    f"{text} series is available at center 0 only, not {self.center}"
                )
            return self._table(_TABLES[text])
        raise ParseError(f"unknown name {tok.text!r}", tok.pos)

    def _coeff_list(self, parser: _Parser) -> List[Fraction]:
        scalar = _ScalarEnv(self.bits, exact_only=True)
        parser.expect_punct("(")
        coeffs = [parser.parse_expr(scalar)]
        while parser.at_punct(","):
            parser.advance()
            coeffs.append(parser.parse_expr(scalar))
        parser.expect_punct(")")
        return coeffs

    def div(self, a: PowerSeries, b: PowerSeries) -> PowerSeries:
        if b.exact and len(b.coeffs) <= 1:
            constant = b.coefficient(0)
            if constant == 0:
                raise DomainError("division by zero")
            return a.scale(1 / constant)
        return a.divide(b, self.order)

    def pow(self, a: PowerSeries, k: int) -> PowerSeries:
        if k >= 0:
            acc = PowerSeries.constant(self.center, 1)
            for _ in range(k):
                acc = acc * a
            return acc
        positive = self.pow(a, -k)
        return PowerSeries.constant(self.center, 1).divide(positive, self.order)


def _fill_sin(coeffs: List[Fraction]) -> None:
    for j in range(len(coeffs)):
        if 2 * j + 1 >= len(coeffs):
            break
        coeffs[2 * j + 1] = Fraction((-1) ** j, math.factorial(2 * j + 1))


def _fill_cos(coeffs: List[Fraction]) -> None:
    for j in range(len(coeffs)):
        if 2 * j >= len(coeffs):
            break
        coeffs[2 * j] = Fraction((-1) ** j, math.factorial(2 * j))


def _fill_cosh(coeffs: List[Fraction]) -> None:
    for j in range(len(coeffs)):
        if 2 * j >= len(coeffs):
            break
        coeffs[2 * j] = Fraction(1, math.factorial(2 * j))


def _fill_tan(coeffs: List[Fraction]) -> None:
    # a' = 1 + a^2 with a(0) = 0; the x^k coefficient of a^2 only involves
    # indices below k, so the recurrence closes.
    order = len(coeffs) - 1
    if order >= 1:
        coeffs[1] = Fraction(1)
    for k in range(1, order):
        square = sum(coeffs[i] * coeffs[k - i] for i in range(1, k))
        coeffs[k + 1] = (Fraction(1 if k == 0 else 0) + square) / (k + 1)


_TABLES = {"sin": _fill_sin, "cos": _fill_cos, "cosh": _fill_cosh, "tan": _fill_tan}


class _PolyEnv(_Env):
    def number(self, value: Fraction) -> Polynomial:
        return Polynomial.of(value)

    def name(self, parser: _Parser, tok: Token) -> Polynomial:
        if tok.text == "x":
            return Polynomial.x()
        raise ParseError(f"unknown name {tok.text!r}", tok.pos)

    def div(self, a: Polynomial, b: Polynomial) -> Polynomial:
        if b.degree > 0:
            raise DomainError("polynomial division only by constants")
        constant = b.coefficient(0)
        if constant == 0:
            raise DomainError("division by zero")
        return a * (1 / constant)

    def pow(self, a: Polynomial, k: int) -> Polynomial:
        if k < 0:
            raise DomainError("negative powers are not polynomials")
        acc = Polynomial.of(1)
        for _ in range(k):
            acc = acc * a
        return acc


class _TrigEnv(_Env):
    """Values are ``TrigPolynomial`` or scalar ``ComplexRational``."""

    @staticmethod
    def _as_trig(value: Any) -> TrigPolynomial:
        if isinstance(value, TrigPolynomial):
            return value
        return TrigPolynomial.of({0: value})

    @staticmethod
    def _as_scalar(value: Any) -> Optional[ComplexRational]:
        if isinstance(value, ComplexRational):
            return value
        if all(k == 0 for k in value.modes()):
            return value.amplitude(0)
        return None

    def number(self, value: Fraction) -> ComplexRational:
        return ComplexRational.of(value)

    def name(self, parser: _Parser, tok: Token) -> Any:
        if tok.text == "i":
            return ComplexRational.of(0, 1)
        if tok.text == "E":
            mode = self._parse_paren_arg(
                parser, _ScalarEnv(exact_only=True)
            )
            if not isinstance(mode, Fraction) or mode.denominator != 1:
                raise ParseError("E(k) needs an integer mode", tok.pos)
            return TrigPolynomial.basis(int(mode), CONE)
        raise ParseError(f"unknown name {tok.text!r}", tok.pos)

    def add(self, a: Any, b: Any) -> Any:
        if isinstance(a, ComplexRational) and isinstance(b, ComplexRational):
            return a + b
        return self._as_trig(a) + self._as_trig(b)

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def neg(self, a: Any) -> Any:
        return -a

    def mul(self, a: Any, b: Any) -> Any:
        if isinstance(a, ComplexRational) and isinstance(b, ComplexRational):
            return a * b
        if isinstance(a, ComplexRational):
            return b.scale(a)
        if isinstance(b, ComplexRational):
            return a.scale(b)
        out: dict = {}
        for ka in a.modes():
            for kb in b.modes():
                k = ka + kb
                term = a.amplitude(ka) * b.amplitude(kb)
                out[k] = out[k] + term if k in out else term
        return TrigPolynomial.of(out)

    def div(self, a: Any, b: Any) -> Any:
        scalar = b if isinstance(b, ComplexRational) else self._as_scalar(b)
        if scalar is None:
            raise DomainError("can only divide by scalar trig values")
        if scalar.is_zero():
            raise DomainError("division by zero")
        if isinstance(a, ComplexRational):
            return a / scalar
        return a.scale(ComplexRational.of(1) / scalar)

    def pow(self, a: Any, k: int) -> Any:
        if k < 0:
            scalar = self._as_scalar(a) if not isinstance(a, ComplexRational) else a
            if scalar is None:
                raise DomainError("negative powers only apply to scalars")
            return ComplexRational.of(1) / self.pow(scalar, -k)
        acc: Any = ComplexRational.of(1)
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc


# -- entry points --------------------------------------------------------------

#: element kinds accepted by :func:`parse_expression`
CONTEXTS = ("real", "series", "germ", "polynomial", "trig")


def _split_at_clause(tokens: List[Token]) -> tuple:
    for idx, tok in enumerate(tokens):
        if tok.kind == "name" and tok.text == "at":
            if tokens[idx + 1].kind == "end":
                raise ParseError("missing base point after 'at'", tok.pos)
            head = tokens[:idx] + [Token("end", "", tok.pos)]
            tail = tokens[idx + 1:]
            return head, tail
    return tokens, None


def parse_expression(
    text: str,
    context: str,
    order: int = 32,
    bits: int = 256,
    center: Fraction = Fraction(0),
) -> Any:
    """Parse ``text`` as an element of the given kind.

    ``order`` bounds inexact series knowledge; ``bits`` sets certified-real
    precision; ``center`` is the series base point unless the expression
    carries an ``at c`` suffix.
    """
    if context not in CONTEXTS:
        raise DomainError(f"unknown parse context {context!r}")
    tokens = tokenize(text)
    if context in ("series", "germ"):
        head, tail = _split_at_clause(tokens)
        if tail is not None:
            at_value = _Parser(tail).parse_full(_ScalarEnv(bits, exact_only=True))
            center = Fraction(at_value)
        return _Parser(head).parse_full(_SeriesEnv(center, order, bits))
    if context == "real":
        return _Parser(tokens).parse_full(_ScalarEnv(bits))
    if context == "polynomial":
        return _Parser(tokens).parse_full(_PolyEnv())
    return _Parser(tokens).parse_full(_TrigEnv())


def parse_scalar(text: str, bits: int = 256) -> Any:
    """Parse a real scalar: exact ``Fraction`` or certified ``Interval``."""
    return parse_expression(text, "real", bits=bits)


def parse_alpha_schedule(text: str) -> Callable[[int], Fraction]:
    """Parse an exponent schedule: a constant, a comma list (last value
    repeats), or an index expression in ``i`` such as ``1/(i+2)``."""
    tokens = tokenize(text)
    has_index = any(t.kind == "name" and t.text == "i" for t in tokens)
    if has_index:
        def schedule(index: int) -> Fraction:
            env = _ScalarEnv(exact_only=True, variables={"i": Fraction(index)})
            value = _Parser(tokenize(text)).parse_full(env)
            return Fraction(value)

        schedule(0)  # validate eagerly so bad schedules fail at parse time
        return schedule
    parts = text.split(",")
    env = _ScalarEnv(exact_only=True)
    values = [Fraction(_Parser(tokenize(p)).parse_full(env)) for p in parts]
    if not values:
        raise ParseError("empty alpha schedule", 0)

    def listed(index: int) -> Fraction:
        return values[index] if index < len(values) else values[-1]

    return listed


def parse_path(text: str) -> List[complex]:
    """Parse a path: ``;``-separated points, each ``re`` or ``re,im``; a
    string without ``;`` is a comma list of real points."""
    points: List[complex] = []
    if ";" in text:
        offset = 0
        for group in text.split(";"):
            parts = group.split(",")
            if len(parts) not in (1, 2) or not group.strip():
                raise ParseError("path points are 're' or 're,im'", offset)
            try:
                re = float(parts[0])
                im = float(parts[1]) if len(parts) == 2 else 0.0
            except ValueError:
                raise ParseError(f"bad path point {group.strip()!r}", offset)
            points.append(complex(re, im))
            offset += len(group) + 1
    else:
        offset = 0
        for part in text.split(","):
            if not part.strip():
                raise ParseError("empty path point", offset)
            try:
                points.append(complex(float(part), 0.0))
            except ValueError:
                raise ParseError(f"bad path point {part.strip()!r}", offset)
            offset += len(part) + 1
    if len(points) < 1:
        raise ParseError("empty path", 0)
    return points
