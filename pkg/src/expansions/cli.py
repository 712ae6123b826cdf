"""Command-line frontend.

Subcommands wrap the library one-to-one and render with the analysis
serializers, so stdout is deterministic: identical invocations produce
identical bytes.  Options may also come from a ``--config`` JSON file keyed
by the long flag names; explicit flags win.

Exit codes: 0 success; 2 parse/domain errors; 3 exhausted precision or
truncated knowledge; 4 an improper convergent where a proper one was demanded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence

from .analysis import METRICS, convergence_report, export, render_value
from .approx import NL_LOGEXP, NL_POWER, ApproximationSystem, ASConfig
from .coefficients import ASCoef3
from .core import ExpansionSystem, coefficient_code, convergent, order_of
from .errors import (
    DomainError,
    ExpansionError,
    ParseError,
    PrecisionExhausted,
    QuadratureFailure,
    SingularityOnPath,
    TruncationInconclusive,
    UnsupportedInContext,
)
from .exprs import parse_alpha_schedule, parse_expression, parse_path
from .morphisms import (
    Morphism,
    as_d_shift_morphism,
    cf_shift_morphism,
    decimal_shift_morphism,
    newton_reflection_morphism,
    verify_homomorphism,
)
from .patheval import eval_convergent_path
from .registry import build_system, get_entry, system_ids

DEFAULT_BITS = 256
DEFAULT_SERIES_ORDER = 32


class _ImproperDemand(ExpansionError):
    """Raised internally when a subcommand needs a proper convergent."""


# -- option plumbing ---------------------------------------------------------


def _apply_config(args: argparse.Namespace) -> None:
    path = getattr(args, "config", None)
    if not path:
        return
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise DomainError("config file must hold a JSON object")
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise DomainError(f"unknown config key {key!r}")
        if getattr(args, attr) is None:
            setattr(args, attr, value)


def _require(args: argparse.Namespace, attr: str) -> Any:
    value = getattr(args, attr)
    if value is None:
        raise DomainError(f"missing required --{attr.replace('_', '-')}")
    return value


def _get(args: argparse.Namespace, attr: str, default: Any) -> Any:
    value = getattr(args, attr, None)
    return default if value is None else value


def _parse_element(system: ExpansionSystem, text: str, args: argparse.Namespace) -> Any:
    bits = int(_get(args, "bits", DEFAULT_BITS))
    order = int(_get(args, "series_order", DEFAULT_SERIES_ORDER))
    kind = system.kind
    if kind == "real":
        return parse_expression(text, "real", bits=bits)
    if kind in ("series", "germ"):
        if isinstance(system, ApproximationSystem):
            center = system.config.center
        else:
            center = Fraction(getattr(system, "center", 0))
        return parse_expression(text, "series", order=order, bits=bits, center=center)
    if kind == "polynomial":
        return parse_expression(text, "polynomial")
    return parse_expression(text, "trig")


# -- subcommand handlers -----------------------------------------------------


def _cmd_systems_list(args: argparse.Namespace) -> int:
    for system_id in system_ids():
        entry = get_entry(system_id)
        print(f"{entry.id:<18} {entry.kind:<11} {entry.description}")
    return 0


def _cmd_expand(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = build_system(_require(args, "system"))
    y = _parse_element(system, _require(args, "input"), args)
    depth = int(_require(args, "depth"))
    approx = getattr(args, "approx", None)
    code = coefficient_code(system, y, depth)
    print(" ".join(render_value(c, approx) for c in code))
    return 0


def _cmd_convergent(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = build_system(_require(args, "system"))
    y = _parse_element(system, _require(args, "input"), args)
    n = int(_require(args, "order"))
    approx = getattr(args, "approx", None)
    trace = convergent(system, y, n)
    if not trace.proper:
        raise _ImproperDemand(f"convergent improper at level {trace.improper_at}")
    if args.emit == "trace":
        for k in range(trace.n, -1, -1):
            print(f"{k}: {render_value(trace.stages[k], approx)}")
    else:
        print(render_value(trace.value, approx))
    return 0


def _cmd_order(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = build_system(_require(args, "system"))
    y = _parse_element(system, _require(args, "input"), args)
    print(str(order_of(system, y, int(_require(args, "max")))))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = build_system(_require(args, "system"))
    y = _parse_element(system, _require(args, "input"), args)
    n_max = int(_require(args, "nmax"))
    metric = args.metric or ("abs" if system.kind == "real" else "coeff-head")
    if metric not in METRICS:
        raise DomainError(f"unknown metric {metric!r}")
    fmt = args.format or "csv"
    out = _require(args, "out")
    report = convergence_report(system, y, n_max, metric)
    export(report, fmt, out, getattr(args, "approx", None))
    return 0


_BUILTIN_MORPHISMS = {
    "newton-reflection": ("newton-forward", lambda: newton_reflection_morphism()),
    "decimal-shift": ("base10", lambda: decimal_shift_morphism()[1]),
    "cf-shift": ("cf", lambda: cf_shift_morphism()[1]),
    "as-d-shift": (
        "as-d-power-half",
        lambda: as_d_shift_morphism(build_system("as-d-power-half"))[1],
    ),
}


def builtin_morphism(spec_id: str) -> Morphism:
    """Construct one of the named built-in morphisms."""
    if spec_id not in _BUILTIN_MORPHISMS:
        raise DomainError(f"unknown morphism spec {spec_id!r}")
    return _BUILTIN_MORPHISMS[spec_id][1]()


def morphism_samples(spec_id: str, count: int, rng: random.Random) -> List[Any]:
    """Draw verification samples for a built-in morphism's source system."""
    if spec_id not in _BUILTIN_MORPHISMS:
        raise DomainError(f"unknown morphism spec {spec_id!r}")
    sampler = get_entry(_BUILTIN_MORPHISMS[spec_id][0]).sampler
    return [sampler(rng) for _ in range(count)]


def _cmd_morphism_verify(args: argparse.Namespace) -> int:
    _apply_config(args)
    spec_id = _require(args, "spec")
    count = int(_get(args, "samples", 20))
    depth = int(_get(args, "depth", 6))
    rng = random.Random(int(_get(args, "seed", 0)))
    morphism = builtin_morphism(spec_id)
    samples = morphism_samples(spec_id, count, rng)
    report = verify_homomorphism(morphism, samples, depth)
    if report.ok:
        print(f"ok: no violation found on {count} samples to depth {depth}")
    else:
        print(
            f"violation: equation={report.equation} level={report.level}"
            f" sample={report.sample_index}"
        )
        print(f"detail: {report.detail}")
    return 0


def _build_as_system(args: argparse.Namespace) -> ApproximationSystem:
    transform = str(_require(args, "transform")).upper()
    nonlinearity = str(_require(args, "nonlinearity"))
    order = int(_get(args, "series_order", 64))
    alphas = None
    if nonlinearity == NL_POWER:
        alphas = parse_alpha_schedule(str(_require(args, "alpha")))
    config = ASConfig(
        transform=transform, nonlinearity=nonlinearity, alphas=alphas, order=order
    )
    return ApproximationSystem(config)


def _cmd_as_run(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = _build_as_system(args)
    y = _parse_element(system, _require(args, "input"), args)
    depth = int(_require(args, "depth"))
    approx = getattr(args, "approx", None)
    code = coefficient_code(system, y, depth)
    print("c: " + " ".join(render_value(c.c, approx) for c in code))
    print("m: " + " ".join(render_value(c.m, approx) for c in code))
    if code and isinstance(code[0], ASCoef3):
        print("b: " + " ".join(render_value(c.b, approx) for c in code))
    return 0


def _cmd_as_eval(args: argparse.Namespace) -> int:
    _apply_config(args)
    system = _build_as_system(args)
    y = _parse_element(system, _require(args, "input"), args)
    n = int(_require(args, "order"))
    tol = float(_get(args, "tol", 1e-10))
    path = parse_path(str(_require(args, "path")))
    code = coefficient_code(system, y, n)
    result = eval_convergent_path(system, code, path, tol=tol)
    print(f"value: {render_value(result.value)}")
    print(f"error: {result.error!r}")
    print(f"panels: {result.panels}")
    return 0


# -- parser assembly ---------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, *extra: str) -> None:
    parser.add_argument("--config", help="JSON file of option defaults")
    parser.add_argument("--system", help="system id from `systems list`")
    parser.add_argument("--input", help="element expression")
    parser.add_argument("--bits", type=int, help="certified-real precision bits")
    parser.add_argument(
        "--series-order", type=int, dest="series_order",
        help="knowledge order for inexact series",
    )
    parser.add_argument(
        "--approx", type=int, help="render numbers as decimals with this many digits"
    )
    for name in extra:
        if name == "depth":
            parser.add_argument("--depth", type=int, help="number of coefficients")
        elif name == "order":
            parser.add_argument("--order", type=int, help="convergent index")
        elif name == "max":
            parser.add_argument("--max", type=int, help="depth bound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expansions",
        description="expansion systems: coefficient codes, convergents, reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    systems = sub.add_parser("systems", help="registry operations")
    systems_sub = systems.add_subparsers(dest="subcommand", required=True)
    systems_list = systems_sub.add_parser("list", help="list built-in systems")
    systems_list.set_defaults(handler=_cmd_systems_list)

    expand = sub.add_parser("expand", help="coefficient code of an element")
    _add_common(expand, "depth")
    expand.set_defaults(handler=_cmd_expand)

    conv = sub.add_parser("convergent", help="n-th convergent of an element")
    _add_common(conv, "order")
    conv.add_argument("--emit", choices=("value", "trace"), default="value")
    conv.set_defaults(handler=_cmd_convergent)

    order = sub.add_parser("order", help="least depth at which the element is neutral")
    _add_common(order, "max")
    order.set_defaults(handler=_cmd_order)

    report = sub.add_parser("report", help="convergence report to a file")
    _add_common(report)
    report.add_argument("--nmax", type=int, help="largest convergent index")
    report.add_argument("--metric", choices=tuple(METRICS), help="distance metric")
    report.add_argument("--out", help="output file path")
    report.add_argument("--format", choices=("csv", "json"), help="output format")
    report.set_defaults(handler=_cmd_report)

    morphism = sub.add_parser("morphism", help="morphism operations")
    morphism_sub = morphism.add_subparsers(dest="subcommand", required=True)
    verify = morphism_sub.add_parser("verify", help="check a built-in morphism")
    verify.add_argument("--config", help="JSON file of option defaults")
    verify.add_argument("--spec", help="built-in morphism id")
    verify.add_argument("--samples", type=int, help="number of samples (default 20)")
    verify.add_argument("--depth", type=int, help="levels to check (default 6)")
    verify.add_argument("--seed", type=int, help="sample RNG seed (default 0)")
    verify.set_defaults(handler=_cmd_morphism_verify)

    as_cmd = sub.add_parser("as", help="approximation-system operations")
    as_sub = as_cmd.add_subparsers(dest="subcommand", required=True)

    as_run = as_sub.add_parser("run", help="coefficient code of a germ")
    _add_common(as_run, "depth")
    as_run.add_argument("--transform", choices=("d", "k", "kd", "D", "K", "KD"))
    as_run.add_argument("--nonlinearity", choices=(NL_POWER, NL_LOGEXP))
    as_run.add_argument("--alpha", help="exponent schedule")
    as_run.set_defaults(handler=_cmd_as_run)

    as_eval = as_sub.add_parser("eval", help="evaluate a convergent along a path")
    _add_common(as_eval, "order")
    as_eval.add_argument("--transform", choices=("d", "k", "kd", "D", "K", "KD"))
    as_eval.add_argument("--nonlinearity", choices=(NL_POWER, NL_LOGEXP))
    as_eval.add_argument("--alpha", help="exponent schedule")
    as_eval.add_argument("--path", help="semicolon-separated re,im points")
    as_eval.add_argument("--tol", type=float, help="quadrature tolerance")
    as_eval.set_defaults(handler=_cmd_as_eval)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except ParseError as exc:
        return _fail("ParseError", exc)
    except _ImproperDemand as exc:
        return _fail("Improper", exc, code=4)
    except (PrecisionExhausted, TruncationInconclusive, QuadratureFailure) as exc:
        return _fail(type(exc).__name__, exc, code=3)
    except (DomainError, UnsupportedInContext, SingularityOnPath) as exc:
        return _fail(type(exc).__name__, exc)
    except ZeroDivisionError as exc:
        return _fail("DomainError", exc)


def _fail(kind: str, exc: BaseException, code: int = 2) -> int:
    sys.stderr.write(f"error: {kind}: {exc}\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
