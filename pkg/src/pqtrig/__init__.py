"""Generalized trigonometric and hyperbolic functions.

The two defining integrals are

    arcsin_pq(x)  = integral_0^x (1 - t^q)^(-1/p) dt,   x in [0, 1]
    arcsinh_pq(x) = integral_0^x (1 + t^q)^(-1/p) dt,   x >= 0

for parameters p, q in (1, inf). Their inverses sin_pq and sinh_pq, the
constants pi_pq = 2*arcsin_pq(1) and m_star = lim arcsinh_pq, and a
numerical certification toolkit for geometric concavity/convexity of
these functions live here. See the README for the command line interface.
"""

from .core import (
    EvalResult,
    PQConstants,
    PQParams,
    arccos_pq,
    arcsin_pq,
    arcsin_pq_many,
    arcsinh_pq,
    arcsinh_pq_many,
    constants,
    cos_pq,
    extend_sin,
    sin_pq,
    sin_pq_derivative,
    sin_pq_many,
    sinh_pq,
    sinh_pq_many,
    validate,
)
from .errors import (
    ArgDomainError,
    DerivativeUnavailable,
    DivergentIntegral,
    DomainError,
    NonConvergence,
    ParamDomainError,
    PQTrigError,
    SlowConvergence,
)
from .geoconvex import (
    Classification,
    FunctionHandle,
    GCReport,
    arcsin_handle,
    arcsinh_handle,
    classify,
    elasticity,
    gc_defect,
    integrand_elasticity,
    lemma21_criterion,
    pq_hyperbolic_integrand_handle,
    pq_integrand_handle,
    sin_handle,
    sinh_handle,
)
from .quadrature import Integrand, QuadResult, integrate_finite, integrate_to_infinity
from .series import SeriesResult, arcsin_series, arcsinh_series
from .verify import VerificationReport, run_verification

__version__ = "0.1.0"

__all__ = [
    "ArgDomainError",
    "Classification",
    "DerivativeUnavailable",
    "DivergentIntegral",
    "DomainError",
    "EvalResult",
    "FunctionHandle",
    "GCReport",
    "Integrand",
    "NonConvergence",
    "PQConstants",
    "PQParams",
    "PQTrigError",
    "ParamDomainError",
    "QuadResult",
    "SeriesResult",
    "SlowConvergence",
    "VerificationReport",
    "arccos_pq",
    "arcsin_handle",
    "arcsin_pq",
    "arcsin_pq_many",
    "arcsin_series",
    "arcsinh_handle",
    "arcsinh_pq",
    "arcsinh_pq_many",
    "arcsinh_series",
    "classify",
    "constants",
    "cos_pq",
    "elasticity",
    "extend_sin",
    "gc_defect",
    "integrand_elasticity",
    "integrate_finite",
    "integrate_to_infinity",
    "lemma21_criterion",
    "pq_hyperbolic_integrand_handle",
    "pq_integrand_handle",
    "run_verification",
    "sin_handle",
    "sin_pq",
    "sin_pq_derivative",
    "sin_pq_many",
    "sinh_handle",
    "sinh_pq",
    "sinh_pq_many",
    "validate",
]
