"""Numerical geometric-convexity toolkit.

A positive function f on an interval inside (0, inf) is geometrically
convex when f(x^lam * y^(1-lam)) <= f(x)^lam * f(y)^(1-lam) for all x, y in
the interval and lam in [0, 1]; reversing the inequality gives geometric
concavity, and power functions satisfy it with equality. The signed defect
f(geometric mean) - (geometric mean of values) witnesses either property,
and two pointwise criteria are equivalent for smooth f: the elasticity
x f'(x)/f(x) is increasing, and x*(f f'' - f'^2) + f f' >= 0.

classify() samples defects at seeded low-discrepancy triples drawn in log
coordinates, where the interesting behaviour near domain edges lives.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import core
from ._lds import sample_unit
from .errors import ArgDomainError, DerivativeUnavailable, DomainError

_D1_STEP = 1e-6
_D2_STEP = 1e-4
_EDGE = 10.0  # differencing keeps this many steps clear of the boundary


class Classification(enum.Enum):
    GEOMETRICALLY_CONVEX = "GeometricallyConvex"
    GEOMETRICALLY_CONCAVE = "GeometricallyConcave"
    MULTIPLICATIVELY_AFFINE = "MultiplicativelyAffine"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class FunctionHandle:
    """A positive function on (a, b) with optional analytic derivatives."""

    f: Callable
    df: Optional[Callable] = None
    d2f: Optional[Callable] = None
    a: float = 0.0
    b: float = math.inf


@dataclass(frozen=True)
class GCReport:
    classification: Classification
    worst_defect: float
    witness: tuple  # (x, y, lam) attaining the worst defect
    samples: int


def _feval(fh: FunctionHandle, xs: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(fh.f(xs), dtype=np.float64)
        if out.shape == xs.shape:
            return out
    except Exception:
        pass
    return np.array([float(fh.f(t)) for t in xs], dtype=np.float64)


def _f1(fh: FunctionHandle, x: float) -> float:
    v = float(fh.f(x))
    if not (v > 0.0 and math.isfinite(v)):
        raise DomainError(f"evaluator must be positive and finite; got {v!r} "
                          f"at x = {x!r}")
    return v


def _check_point(fh: FunctionHandle, x: float, name: str = "x") -> None:
    if not (fh.a < x < fh.b):
        raise ArgDomainError(
            f"{name} = {x!r} must lie in the open domain ({fh.a!r}, {fh.b!r})")


def gc_defect(fh: FunctionHandle, x: float, y: float, lam: float) -> float:
    """f(x^lam y^(1-lam)) - f(x)^lam f(y)^(1-lam); <= 0 on convex samples."""
    x = float(x)
    y = float(y)
    lam = float(lam)
    if not (0.0 <= lam <= 1.0):
        raise ArgDomainError("lambda must lie in [0, 1]")
    _check_point(fh, x, "x")
    _check_point(fh, y, "y")
    g = x ** lam * y ** (1.0 - lam)
    _check_point(fh, g, "x^lam y^(1-lam)")
    return _f1(fh, g) - _f1(fh, x) ** lam * _f1(fh, y) ** (1.0 - lam)


def _d1(fh: FunctionHandle, x: float) -> float:
    if fh.df is not None:
        return float(fh.df(x))
    h = _D1_STEP
    if not (fh.a < x * (1.0 - _EDGE * h) and x * (1.0 + _EDGE * h) < fh.b):
        raise DerivativeUnavailable(
            f"x = {x!r} is too close to the boundary for differencing")
    xp, xm = x * (1.0 + h), x * (1.0 - h)
    return (_f1(fh, xp) - _f1(fh, xm)) / (xp - xm)


def _d2(fh: FunctionHandle, x: float, f0: float) -> float:
    if fh.d2f is not None:
        return float(fh.d2f(x))
    h = _D2_STEP
    if not (fh.a < x * (1.0 - _EDGE * h) and x * (1.0 + _EDGE * h) < fh.b):
        raise DerivativeUnavailable(
            f"x = {x!r} is too close to the boundary for differencing")
    xp, xm = x * (1.0 + h), x * (1.0 - h)
    return (_f1(fh, xp) - 2.0 * f0 + _f1(fh, xm)) / ((x * h) ** 2)


def elasticity(fh: FunctionHandle, x: float) -> float:
    """x f'(x) / f(x); increasing exactly for geometrically convex f."""
    x = float(x)
    _check_point(fh, x)
    return x * _d1(fh, x) / _f1(fh, x)


def lemma21_criterion(fh: FunctionHandle, x: float) -> float:
    """x*(f(x) f''(x) - f'(x)^2) + f(x) f'(x); >= 0 iff convex pointwise."""
    x = float(x)
    _check_point(fh, x)
    f0 = _f1(fh, x)
    d1 = _d1(fh, x)
    d2 = _d2(fh, x, f0)
    return x * (f0 * d2 - d1 * d1) + f0 * d1


def integrand_elasticity(params: core.PQParams, t: float) -> float:
    """Closed form (q/p) * t^q / (1 - t^q) for the principal integrand."""
    t = float(t)
    if not (0.0 < t < 1.0):
        raise ArgDomainError("t must lie in (0, 1)")
    p, q = params.p, params.q
    lt = q * math.log(t)
    return (q / p) * math.exp(lt) / (-math.expm1(lt))


def classify(fh: FunctionHandle, samples: int, tol: float = 1e-9,
             rng_seed: int = 0) -> GCReport:
    """Sample gc_defect on seeded triples and label the function.

    Multiplicative affinity (every |defect| <= tol) takes priority; a side
    is declared only when the other sign never exceeds tol; anything else
    is Indeterminate. Sampling is log-uniform in x and y, uniform in lam,
    and deterministic for a fixed seed.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    a, b = fh.a, fh.b
    if not (0.0 <= a < b and math.isfinite(b)):
        raise DomainError("classification needs a bounded domain (a, b)")
    lo = a if a > 0.0 else b * 1e-9

    u = sample_unit(samples, 3, rng_seed)
    lspan = math.log(b) - math.log(lo)
    x = np.exp(math.log(lo) + u[:, 0] * lspan)
    y = np.exp(math.log(lo) + u[:, 1] * lspan)
    lam = u[:, 2]
    g = x ** lam * y ** (1.0 - lam)

    allpts = np.concatenate([x, y, g])
    vals = _feval(fh, allpts)
    if not np.all(np.isfinite(vals) & (vals > 0.0)):
        raise DomainError("evaluator must be positive and finite on samples")
    fx, fy, fg = vals[:samples], vals[samples:2 * samples], vals[2 * samples:]
    defects = fg - fx ** lam * fy ** (1.0 - lam)

    max_d = float(defects.max())
    min_d = float(defects.min())
    if max(abs(max_d), abs(min_d)) <= tol:
        label = Classification.MULTIPLICATIVELY_AFFINE
    elif max_d <= tol and min_d < -tol:
        label = Classification.GEOMETRICALLY_CONVEX
    elif min_d >= -tol and max_d > tol:
        label = Classification.GEOMETRICALLY_CONCAVE
    else:
        label = Classification.INDETERMINATE
    i = int(np.argmax(np.abs(defects)))
    return GCReport(label, float(defects[i]),
                    (float(x[i]), float(y[i]), float(lam[i])), samples)


def _softplus(v: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.where(v > 0.0, v, 0.0) + np.log1p(np.exp(-np.abs(v)))


def pq_integrand_handle(params: core.PQParams) -> FunctionHandle:
    """(1 - t^q)^(-1/p) on (0, 1) with analytic derivatives."""
    p, q = params.p, params.q

    def f(t):
        t = np.asarray(t, dtype=np.float64)
        om = -np.expm1(q * np.log(t))
        return np.exp(-np.log(om) / p)

    def df(t):
        t = np.asarray(t, dtype=np.float64)
        om = -np.expm1(q * np.log(t))
        return (q / p) * t ** (q - 1.0) * om ** (-1.0 / p - 1.0)

    def d2f(t):
        t = np.asarray(t, dtype=np.float64)
        tq = np.exp(q * np.log(t))
        om = 1.0 - tq
        return ((q / p) * t ** (q - 2.0) * om ** (-1.0 / p - 2.0)
                * ((q - 1.0) * om + (1.0 + 1.0 / p) * q * tq))

    return FunctionHandle(f, df, d2f, 0.0, 1.0)


def pq_hyperbolic_integrand_handle(params: core.PQParams,
                                   upper: float = math.inf) -> FunctionHandle:
    """(1 + t^q)^(-1/p) on (0, upper) with analytic derivatives."""
    p, q = params.p, params.q

    def f(t):
        t = np.asarray(t, dtype=np.float64)
        return np.exp(-_softplus(q * np.log(t)) / p)

    def df(t):
        t = np.asarray(t, dtype=np.float64)
        op = 1.0 + np.exp(q * np.log(t))
        return -(q / p) * t ** (q - 1.0) * op ** (-1.0 / p - 1.0)

    def d2f(t):
        t = np.asarray(t, dtype=np.float64)
        tq = np.exp(q * np.log(t))
        op = 1.0 + tq
        return (-(q / p) * t ** (q - 2.0) * op ** (-1.0 / p - 2.0)
                * ((q - 1.0) * op - (1.0 + 1.0 / p) * q * tq))

    return FunctionHandle(f, df, d2f, 0.0, upper)


def _array_or_scalar(fn):
    def wrapped(x):
        arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
        out = fn(arr)
        return out if np.ndim(x) else float(out[0])
    return wrapped


def sin_handle(params: core.PQParams, rel_tol: float = 1e-12) -> FunctionHandle:
    """sin_pq on its principal branch (0, pi_pq/2), derivatives analytic."""
    p, q = params.p, params.q
    pi_half = constants_half(params, rel_tol)

    @_array_or_scalar
    def f(y):
        return core.sin_pq_many(params, y, rel_tol)[0]

    @_array_or_scalar
    def df(y):
        s = core.sin_pq_many(params, y, rel_tol)[0]
        om = -np.expm1(q * np.log(s))
        return np.exp(np.log(om) / p)

    @_array_or_scalar
    def d2f(y):
        s = core.sin_pq_many(params, y, rel_tol)[0]
        om = -np.expm1(q * np.log(s))
        return -(q / p) * s ** (q - 1.0) * om ** (2.0 / p - 1.0)

    return FunctionHandle(f, df, d2f, 0.0, pi_half)


def sinh_handle(params: core.PQParams, rel_tol: float = 1e-12,
                upper: Optional[float] = None) -> FunctionHandle:
    """sinh_pq on (0, upper); upper defaults to min(1, 0.999*m_star)."""
    p, q = params.p, params.q
    if upper is None:
        m_star = core.constants(params, rel_tol).m_star
        upper = min(1.0, 0.999 * m_star)

    @_array_or_scalar
    def f(y):
        return core.sinh_pq_many(params, y, rel_tol)[0]

    @_array_or_scalar
    def df(y):
        s = core.sinh_pq_many(params, y, rel_tol)[0]
        return np.exp(_softplus(q * np.log(s)) / p)

    @_array_or_scalar
    def d2f(y):
        s = core.sinh_pq_many(params, y, rel_tol)[0]
        op = 1.0 + np.exp(q * np.log(s))
        return (q / p) * s ** (q - 1.0) * op ** (2.0 / p - 1.0)

    return FunctionHandle(f, df, d2f, 0.0, upper)


def arcsin_handle(params: core.PQParams, rel_tol: float = 1e-12) -> FunctionHandle:
    """arcsin_pq on (0, 1) with analytic derivatives."""
    p, q = params.p, params.q
    base = pq_integrand_handle(params)

    @_array_or_scalar
    def f(x):
        return core.arcsin_pq_many(params, x, rel_tol)[0]

    return FunctionHandle(f, base.f, base.df, 0.0, 1.0)


def arcsinh_handle(params: core.PQParams, rel_tol: float = 1e-12,
                   upper: float = math.inf) -> FunctionHandle:
    """arcsinh_pq on (0, upper) with analytic derivatives."""
    base = pq_hyperbolic_integrand_handle(params)

    @_array_or_scalar
    def f(x):
        return core.arcsinh_pq_many(params, x, rel_tol)[0]

    return FunctionHandle(f, base.f, base.df, 0.0, upper)


def constants_half(params: core.PQParams, rel_tol: float = 1e-12) -> float:
    """pi_pq / 2, through the memoized constants cache."""
    return 0.5 * core.constants(params, rel_tol).pi_pq
