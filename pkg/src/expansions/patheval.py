"""Numerical evaluation of approximation-system convergents along paths.

A convergent of a ``D``/``KD`` system is a tower of integrals

    y_k(x) = const [+ b_k (x - x0)] + integral_{x0}^{x} c_k (t-x0)^{m_k} U_k(y_{k+1}(t)) dt

so evaluating it away from the center means integrating along a path — and
for fractional inverse exponents ``U_k(w) = w**(1/alpha_k)`` the power must be
continued analytically along that path, not computed on the principal branch.

The evaluator shares one adaptive panel subdivision of the polyline across
all levels of the tower.  Each panel carries Chebyshev–Lobatto nodes; one
bottom-up sweep evaluates every level at every node, turning the Chebyshev
coefficients of the integrand into its running antiderivative panel by panel
(the cumulative form of Clenshaw–Curtis quadrature).  A naive recursive
quadrature would re-evaluate the whole tower beneath every node and cost
``nodes**depth``; the shared sweep costs ``nodes * panels * depth``.

Error control is the standard trailing-coefficient estimate, summed over
panels and levels; panels that carry too much of it are halved and the sweep
rerun.  Numerically vanishing arguments to a fractional power, a log-branch
argument, or a reciprocal raise
:class:`~expansions.errors.SingularityOnPath`; failure to meet the tolerance
within the panel budget raises :class:`~expansions.errors.QuadratureFailure`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .approx import (
    ASCoef,
    ASCoef3,
    ASCoefficient,
    ApproximationSystem,
    NL_POWER,
    TRANSFORM_K,
)
from .coefficients import is_infinite
from .errors import DomainError, QuadratureFailure, SingularityOnPath
from .series import PowerSeries

_TWO_PI = 2 * math.pi
_TINY = 1e-9


@dataclass(frozen=True)
class PathValue:
    """Result of a path evaluation.

    Attributes:
        value: the convergent at the path's endpoint.
        error: accumulated quadrature error estimate (heuristic, see module
            docs; it does not bound the propagation through nonlinearities).
        panels: number of panels in the final subdivision.
    """

    value: complex
    error: float
    panels: int


def evaluate_series(series: PowerSeries, z: complex) -> complex:
    """Horner evaluation of the stored coefficients at ``z``."""
    acc = 0j
    for c in reversed(series.coeffs):
        acc = acc * (z - complex(float(series.center))) + complex(float(c))
    return acc


def _cheb_nodes(n: int) -> List[float]:
    # xi_j in [-1, 1], ordered from -1 to +1 along the panel.
    return [-math.cos(math.pi * j / n) for j in range(n + 1)]


def _cheb_coeffs(values: Sequence[complex]) -> List[complex]:
    """Coefficients A_k with f(xi) = sum A_k T_k(xi) interpolating ``values``
    at the ordered Lobatto nodes."""
    n = len(values) - 1
    rev = list(reversed(values))  # values at cos(pi*j/n), the standard order
    out: List[complex] = []
    for k in range(n + 1):
        acc = 0j
        for j in range(n + 1):
            w = 0.5 if j in (0, n) else 1.0
            acc += w * rev[j] * math.cos(math.pi * k * j / n)
        a = (2.0 / n) * acc
        if k in (0, n):
            a *= 0.5
        out.append(a)
    return out


def _cheb_antiderivative(coeffs: Sequence[complex]) -> List[complex]:
    """Coefficients of the antiderivative vanishing at xi = -1."""
    n = len(coeffs) - 1
    b = [0j] * (n + 2)
    # integral T_0 = T_1, integral T_1 = T_2/4, integral T_k = T_{k+1}/(2k+2) - T_{k-1}/(2k-2)
    b[1] = coeffs[0] - (coeffs[2] / 2 if n >= 2 else 0j)
    for k in range(2, n + 2):
        prev = coeffs[k - 1]
        nxt = coeffs[k + 1] if k + 1 <= n else 0j
        b[k] = (prev - nxt) / (2 * k)
    b[0] = -sum(bk * (-1) ** k for k, bk in enumerate(b) if k >= 1)
    return b


def _clenshaw(coeffs: Sequence[complex], x: float) -> complex:
    b1 = b2 = 0j
    for a in reversed(coeffs[1:]):
        b1, b2 = a + 2 * x * b1 - b2, b1
    return coeffs[0] + x * b1 - b2


class _BranchTracker:
    """Continuously-unwrapped complex power/log along an ordered node stream."""

    def __init__(self) -> None:
        self._last_arg: Optional[float] = None

    def log(self, w: complex) -> complex:
        if not (math.isfinite(w.real) and math.isfinite(w.imag)) or abs(w) < _TINY:
            raise SingularityOnPath(
                f"argument {w!r} too close to the branch point along the path"
            )
        arg = cmath.phase(w)
        if self._last_arg is not None:
            arg += _TWO_PI * round((self._last_arg - arg) / _TWO_PI)
        self._last_arg = arg
        return complex(math.log(abs(w)), arg)


def _check_finite(w: complex) -> complex:
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise SingularityOnPath(f"non-finite value {w!r} along the path")
    return w


class _Inverse:
    """The per-level inverse nonlinearity, with branch state."""

    def __init__(self, system: ApproximationSystem, level: int) -> None:
        cfg = system.config
        if cfg.nonlinearity == NL_POWER:
            e = 1 / cfg.alpha(level)
            if e.denominator == 1:
                self._int_exp: Optional[int] = int(e)
                self._frac_exp: Optional[float] = None
            else:
                self._int_exp = None
                self._frac_exp = float(e)
                self._tracker = _BranchTracker()
            self._is_exp = False
        else:
            self._is_exp = True

    def __call__(self, w: complex) -> complex:
        if self._is_exp:
            return _check_finite(cmath.exp(w))
        if self._int_exp is not None:
            if self._int_exp < 0 and abs(w) < _TINY:
                raise SingularityOnPath(
                    f"argument {w!r} too close to a pole along the path"
                )
            return _check_finite(w ** self._int_exp)
        assert self._frac_exp is not None
        return _check_finite(cmath.exp(self._frac_exp * self._tracker.log(w)))


def eval_convergent_path(
    system: ApproximationSystem,
    code: Sequence[ASCoefficient],
    path: Sequence[complex],
    tol: float = 1e-10,
    nodes_per_panel: int = 32,
    max_panels: int = 8192,
    max_rounds: int = 60,
) -> PathValue:
    """Evaluate the convergent with the given coefficient code at the end of
    ``path`` (a polyline starting at the system's center).

    Args:
        system: the approximation system the code came from.
        code: coefficients ``c_0 .. c_{n-1}``.
        path: complex waypoints; ``path[0]`` must equal the center.
        tol: target for the accumulated quadrature error estimate.

    Raises:
        DomainError: empty path or path not anchored at the center.
        SingularityOnPath: see module docs.
        QuadratureFailure: tolerance unreachable within the panel budget.
    """
    cfg = system.config
    if not path:
        raise DomainError("path must contain at least the center")
    x0 = complex(float(cfg.center))
    if abs(path[0] - x0) > 1e-15:
        raise DomainError(f"path starts at {path[0]}, system center is {x0}")
    conv = complex(float(cfg.constant_term))

    # Normalize the coefficient data per level.
    levels: List[Tuple[complex, int, Optional[complex]]] = []
    for coeff in code:
        b = complex(float(coeff.b)) if isinstance(coeff, ASCoef3) else None
        if is_infinite(coeff.m):
            levels.append((0j, 0, b))
        else:
            if not isinstance(coeff, (ASCoef, ASCoef3)):
                raise DomainError(f"not an approximation coefficient: {coeff!r}")
            levels.append((complex(float(coeff.c)), int(coeff.m), b))

    n = len(levels)
    segments = [
        (complex(a), complex(b)) for a, b in zip(path, path[1:]) if a != b
    ]
    if not segments:
        # Degenerate path: the value at the center.
        return PathValue(value=conv + 0j, error=0.0, panels=0)

    panels: List[Tuple[complex, complex]] = list(segments)
    N = nodes_per_panel
    xi = _cheb_nodes(N)

    for _ in range(max_rounds):
        # One bottom-up sweep over the shared panel subdivision.
        node_points: List[List[complex]] = [
            [0.5 * (a + b) + 0.5 * (b - a) * x for x in xi] for a, b in panels
        ]
        tail_values: List[List[complex]] = [[conv] * (N + 1) for _ in panels]
        total_err = 0.0
        panel_err = [0.0] * len(panels)

        for k in range(n - 1, -1, -1):
            c_k, m_k, b_k = levels[k]
            inverse = _Inverse(system, k)
            out_panels: List[List[complex]] = []
            running = 0j  # cumulative integral from the path start
            for p, (a, b) in enumerate(panels):
                pts = node_points[p]
                u = [inverse(w) for w in tail_values[p]]
                if cfg.transform == TRANSFORM_K:
                    vals = [
                        conv + c_k * (z - x0) ** m_k * uj for z, uj in zip(pts, u)
                    ]
                    out_panels.append(vals)
                    continue
                integrand = [c_k * (z - x0) ** m_k * uj for z, uj in zip(pts, u)]
                half = 0.5 * (b - a)
                A = _cheb_coeffs(integrand)
                err = (abs(A[N - 1]) + abs(A[N])) * abs(half)
                panel_err[p] = max(panel_err[p], err)
                total_err += err
                B = _cheb_antiderivative(A)
                base = _clenshaw(B, -1.0)
                vals = []
                for j, z in enumerate(pts):
                    cum = running + half * (_clenshaw(B, xi[j]) - base)
                    stage = conv + cum
                    if b_k is not None:
                        stage += b_k * (z - x0)
                    vals.append(stage)
                running += half * (_clenshaw(B, 1.0) - base)
                out_panels.append(vals)
            tail_values = out_panels

        if total_err <= tol or cfg.transform == TRANSFORM_K:
            return PathValue(
                value=tail_values[-1][-1], error=total_err, panels=len(panels)
            )

        # Halve the panels that carry more than their share of the estimate.
        budget = tol / (2 * max(len(panels), 1))
        refined: List[Tuple[complex, complex]] = []
        for (a, b), err in zip(panels, panel_err):
            if err > budget:
                mid = 0.5 * (a + b)
                refined.extend([(a, mid), (mid, b)])
            else:
                refined.append((a, b))
        if len(refined) == len(panels) or len(refined) > max_panels:
            raise QuadratureFailure(
                f"error estimate {total_err:.3e} above tolerance {tol:.3e} "
                f"with {len(panels)} panels"
            )
        panels = refined

    raise QuadratureFailure(
        f"tolerance {tol:.3e} not reached after {max_rounds} refinement rounds"
    )
