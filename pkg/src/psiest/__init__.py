"""Generalized sign-change estimators and their comparison machinery."""

from .errors import (
    DataParseError,
    DegenerateDerivative,
    DegenerateProbes,
    DomainError,
    EmptyData,
    EmptyLowerSet,
    ExprError,
    ExprSyntaxError,
    InvalidArgument,
    InvalidParameter,
    MissingClosedForm,
    NegativeWeight,
    OutOfRange,
    PsiEstError,
    SignViolation,
    SolverError,
    UnknownIdentifier,
)
from .kernel import (
    OpenInterval,
    PsiKernel,
    WeightedSample,
    empirical_theta1_hull,
    uniform_weights,
    weighted_sum,
)
from .solver import (
    SignChangeResult,
    SolverConfig,
    generalized_left_inverse,
    solve_sign_change,
    theta1,
)
from .families import (
    CLOSED_FORM_IDS,
    FAMILY_IDS,
    FamilySpec,
    beta_alpha_bounds,
    closed_form_estimate,
    digamma,
    has_closed_form,
    make_kernel,
)
from .bajraktarevic import (
    BajraktarevicSpec,
    MobiusCoefficients,
    apply_mobius,
    as_kernel,
    determinant_scale,
    determinant_test,
    estimate,
    mobius_fit,
    schwarzian,
    theta_psi_empty,
)
from .comparison import (
    ComparisonVerdict,
    WitnessSet,
    build_witness_set,
    check_derivative_condition,
    check_direct,
    check_equality,
    check_ratio_condition,
    check_two_point,
    construct_multiplier,
)
from .exprparse import eval_expr, parse, pretty, validate_monotone

__version__ = "0.1.0"

__all__ = [
    "BajraktarevicSpec",
    "CLOSED_FORM_IDS",
    "ComparisonVerdict",
    "DataParseError",
    "DegenerateDerivative",
    "DegenerateProbes",
    "DomainError",
    "EmptyData",
    "EmptyLowerSet",
    "ExprError",
    "ExprSyntaxError",
    "FAMILY_IDS",
    "FamilySpec",
    "InvalidArgument",
    "InvalidParameter",
    "MissingClosedForm",
    "MobiusCoefficients",
    "NegativeWeight",
    "OpenInterval",
    "OutOfRange",
    "PsiEstError",
    "PsiKernel",
    "SignChangeResult",
    "SignViolation",
    "SolverConfig",
    "SolverError",
    "UnknownIdentifier",
    "WeightedSample",
    "WitnessSet",
    "apply_mobius",
    "as_kernel",
    "beta_alpha_bounds",
    "build_witness_set",
    "check_derivative_condition",
    "check_direct",
    "check_equality",
    "check_ratio_condition",
    "check_two_point",
    "closed_form_estimate",
    "construct_multiplier",
    "determinant_scale",
    "determinant_test",
    "digamma",
    "empirical_theta1_hull",
    "estimate",
    "eval_expr",
    "generalized_left_inverse",
    "has_closed_form",
    "make_kernel",
    "mobius_fit",
    "parse",
    "pretty",
    "schwarzian",
    "solve_sign_change",
    "theta1",
    "theta_psi_empty",
    "uniform_weights",
    "validate_monotone",
    "weighted_sum",
]
