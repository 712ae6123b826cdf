"""Expansion systems: graded coefficient codes, convergents, and reports.

The package models positional-style expansions (decimal digits, continued
fractions, Egyptian and Engel series, Taylor/Newton/Fourier coefficients,
and nonlinear approximation towers) under one interface: project a
coefficient, expand to the next level, reconstruct convergents backward,
and analyse how fast they approach the element they came from.
"""

from .analysis import (
    ConvergenceReport,
    MonotonicityReport,
    SeparationReport,
    convergence_report,
    export,
    finite_order_witness,
    monotonicity_check,
    render_csv,
    render_json,
    render_value,
    separation_check,
)
from .approx import (
    ApproximationSystem,
    ASConfig,
    alpha_list,
    constant_alpha,
    detect_cycle,
    germ_from_polynomial,
)
from .certified import Interval, e_interval, pi_interval, sqrt_interval
from .coefficients import (
    ASCoef,
    ASCoef3,
    ComplexRational,
    INF,
    NEG_INF,
    is_infinite,
)
from .core import (
    ConvergentTrace,
    ExpansionSystem,
    OrderResult,
    coefficient_code,
    convergent,
    convergent_from_code,
    head_coincidence,
    order_of,
    properness_profile,
    roundtrip_check,
    trajectory,
)
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
from .exprs import parse_alpha_schedule, parse_expression, parse_path, parse_scalar
from .morphisms import (
    HomReport,
    Morphism,
    ShiftedSystem,
    as_d_shift_morphism,
    cf_shift_morphism,
    decimal_shift_morphism,
    identity_morphism,
    newton_reflection_morphism,
    shift_isomorphism,
    translate_convergent,
    verify_homomorphism,
)
from .patheval import PathValue, eval_convergent_path, evaluate_series
from .polynomials import (
    Polynomial,
    argmax_abs_enclosure,
    is_nonneg_on_01,
    isolate_roots_01,
    sup_norm_enclosure,
    sup_norm_le,
)
from .realsys import (
    BaseSystem,
    ContinuedFractionSystem,
    EgyptianSystem,
    EngelSystem,
    FExpansionSystem,
    base_f_expansion,
    magnitude_prefix,
    reciprocal_f_expansion,
)
from .registry import RegistryEntry, build_system, get_entry, sample_element, system_ids
from .series import PowerSeries
from .seriessys import (
    FourierSystem,
    NewtonBackwardSystem,
    NewtonForwardSystem,
    NewtonReflectedSystem,
    NormTaylorSystem,
    TaylorSystem,
    binomial_basis,
    rising_basis,
    taylor_stages,
)
from .trig import TrigPolynomial

__all__ = [
    "ASCoef",
    "ASCoef3",
    "ASConfig",
    "ApproximationSystem",
    "BaseSystem",
    "ComplexRational",
    "ContinuedFractionSystem",
    "ConvergenceReport",
    "ConvergentTrace",
    "DomainError",
    "EgyptianSystem",
    "EngelSystem",
    "ExpansionError",
    "ExpansionSystem",
    "FExpansionSystem",
    "FourierSystem",
    "HomReport",
    "INF",
    "Interval",
    "MonotonicityReport",
    "Morphism",
    "NEG_INF",
    "NewtonBackwardSystem",
    "NewtonForwardSystem",
    "NewtonReflectedSystem",
    "NormTaylorSystem",
    "OrderResult",
    "ParseError",
    "PathValue",
    "Polynomial",
    "PowerSeries",
    "PrecisionExhausted",
    "QuadratureFailure",
    "RegistryEntry",
    "SeparationReport",
    "ShiftedSystem",
    "SingularityOnPath",
    "TaylorSystem",
    "TrigPolynomial",
    "TruncationInconclusive",
    "UnsupportedInContext",
    "alpha_list",
    "argmax_abs_enclosure",
    "as_d_shift_morphism",
    "base_f_expansion",
    "binomial_basis",
    "build_system",
    "cf_shift_morphism",
    "coefficient_code",
    "constant_alpha",
    "convergence_report",
    "convergent",
    "convergent_from_code",
    "decimal_shift_morphism",
    "detect_cycle",
    "e_interval",
    "eval_convergent_path",
    "evaluate_series",
    "export",
    "finite_order_witness",
    "germ_from_polynomial",
    "get_entry",
    "head_coincidence",
    "identity_morphism",
    "is_infinite",
    "is_nonneg_on_01",
    "isolate_roots_01",
    "magnitude_prefix",
    "monotonicity_check",
    "newton_reflection_morphism",
    "order_of",
    "parse_alpha_schedule",
    "parse_expression",
    "parse_path",
    "parse_scalar",
    "pi_interval",
    "properness_profile",
    "reciprocal_f_expansion",
    "render_csv",
    "render_json",
    "render_value",
    "rising_basis",
    "roundtrip_check",
    "sample_element",
    "separation_check",
    "shift_isomorphism",
    "sqrt_interval",
    "sup_norm_enclosure",
    "sup_norm_le",
    "system_ids",
    "taylor_stages",
    "trajectory",
    "translate_convergent",
    "verify_homomorphism",
]
