"""Closed-form evaluation of int_0^z x**lam E_nu(x**mu) dx and related special functions."""
from .dynfric import Family, HSpec, erf_from_gamma, h_eval
from .errors import (
    DivergenceError,
    DomainError,
    ExistenceError,
    InadmissibleParametersError,
    PoleError,
    QuadratureError,
    SideConditionError,
    UnsupportedParameterError,
)
from .integral_family import (
    ClosedFormResult,
    DomainVerdict,
    ParamTriple,
    check_domain,
    closed_form,
    integral,
    ladder_identity_residual,
    reduce_by_parts,
    reduced_form,
    region_boundary,
    small_z_leading,
    transform_scaling,
)
from .quadrature_oracle import OracleResult, QuadratureSpec, oracle_H, oracle_I
from .special_core import (
    expint,
    expint_derivative,
    expint_leading_order,
    expint_recurrence_residual,
    gamma_complete,
    gamma_lower,
    gamma_sum_check,
    gamma_upper,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedFormResult",
    "DivergenceError",
    "DomainError",
    "DomainVerdict",
    "ExistenceError",
    "Family",
    "HSpec",
    "InadmissibleParametersError",
    "OracleResult",
    "ParamTriple",
    "PoleError",
    "QuadratureError",
    "QuadratureSpec",
    "SideConditionError",
    "UnsupportedParameterError",
    "check_domain",
    "closed_form",
    "erf_from_gamma",
    "expint",
    "expint_derivative",
    "expint_leading_order",
    "expint_recurrence_residual",
    "gamma_complete",
    "gamma_lower",
    "gamma_sum_check",
    "gamma_upper",
    "h_eval",
    "integral",
    "ladder_identity_residual",
    "oracle_H",
    "oracle_I",
    "reduce_by_parts",
    "reduced_form",
    "region_boundary",
    "small_z_leading",
    "transform_scaling",
]
