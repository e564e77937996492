"""Generalized (p,q)-trigonometric and hyperbolic functions.

The forward maps arcsin_pq/arcsinh_pq evaluate their defining integrals
through the selected kernel backend; sin_pq/sinh_pq invert them with
bracket-safeguarded Newton iterations; the constants pi_pq and m_star are
memoized per parameter pair because verification runs touch them constantly.

Scalar operations return EvalResult(value, abs_err_est). The *_many
variants accept arrays and return (values, errors) pairs; they are the fast
path for tables and verification sampling.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (ArgDomainError, DomainError, NonConvergence,
                     ParamDomainError)

_GRACE = 1e-9       # forgive float noise just past pi_pq/2
_CONST_TOL = 1e-13  # constants are cached tighter than callers ask


@dataclass(frozen=True)
class PQParams:
    """Validated parameter pair; construct through validate()."""

    p: float
    q: float


@dataclass(frozen=True)
class PQConstants:
    """pi_pq = 2 * integral of (1-t^q)^(-1/p) over (0,1);
    m_star = integral of (1+t^q)^(-1/p) over (0,inf), math.inf when q <= p."""

    pi_pq: float
    m_star: float


@dataclass(frozen=True)
class EvalResult:
    value: float
    abs_err_est: float


_cache_lock = threading.Lock()
# (p, q) -> (pi_half, pi_half_err, m_star, m_star_err, tol_used)
_const_cache: dict = {}


def validate(p: float, q: float) -> PQParams:
    """Check (p, q) lies in (1, inf)^2 and wrap it."""
    p = float(p)
    q = float(q)
    if not (math.isfinite(p) and p > 1.0):
        raise ParamDomainError("p must lie in (1, inf)")
    if not (math.isfinite(q) and q > 1.0):
        raise ParamDomainError("q must lie in (1, inf)")
    return PQParams(p, q)


def _check_rel_tol(rel_tol: float) -> None:
    if not (1e-15 < rel_tol < 1e-2):
        raise DomainError("rel_tol must lie in (1e-15, 1e-2)")


def _compute_consts(p: float, q: float, tol: float):
    mod = kernels.load_backend()
    v, e, _, st = mod.arcsin_batch(np.array([1.0]), p, q, tol)
    if st[0] != 0:
        raise NonConvergence(
            f"half-period quadrature for (p, q)=({p}, {q}) stalled with "
            f"abs_err_est {float(e[0]):.3g}")
    pi_half, pi_err = float(v[0]), float(e[0])
    pi_err = max(pi_err, 2e-16 * pi_half)
    if q > p:
        mv, me, _, mst = mod.mstar_quad(p, q, tol)
        mv, me = float(mv), float(me)
        if mst != 0:
            raise NonConvergence(
                f"m_star quadrature for (p, q)=({p}, {q}) stalled with "
                f"abs_err_est {me:.3g}")
        me = max(me, 2e-16 * mv)
    else:
        mv, me = math.inf, 0.0
    return pi_half, pi_err, mv, me


def _consts(params: PQParams, rel_tol: float = 1e-12):
    key = (params.p, params.q)
    with _cache_lock:
        hit = _const_cache.get(key)
    if hit is not None and hit[4] <= rel_tol:
        return hit
    tol = min(rel_tol, _CONST_TOL)
    entry = _compute_consts(params.p, params.q, tol) + (tol,)
    with _cache_lock:
        _const_cache[key] = entry
    return entry


def constants(params: PQParams, rel_tol: float = 1e-12) -> PQConstants:
    """Memoized pi_pq and m_star; m_star is math.inf exactly when q <= p."""
    _check_rel_tol(rel_tol)
    pi_half, _, m_star, _, _ = _consts(params, rel_tol)
    return PQConstants(2.0 * pi_half, m_star)


def arcsin_pq(params: PQParams, x: float, rel_tol: float = 1e-12) -> EvalResult:
    """Integral of (1-t^q)^(-1/p) from 0 to x, for x in [0, 1]."""
    _check_rel_tol(rel_tol)
    x = float(x)
    if not (math.isfinite(x) and 0.0 <= x <= 1.0):
        raise ArgDomainError("x must lie in [0, 1]")
    if x == 0.0:
        return EvalResult(0.0, 0.0)
    if x == 1.0:
        pi_half, pi_err, _, _, _ = _consts(params, rel_tol)
        return EvalResult(pi_half, pi_err)
    v, e = arcsin_pq_many(params, np.array([x]), rel_tol)
    return EvalResult(float(v[0]), float(e[0]))


def arcsin_pq_many(params: PQParams, x, rel_tol: float = 1e-12):
    _check_rel_tol(rel_tol)
    xs = np.ascontiguousarray(x, dtype=np.float64)
    if xs.size and not np.all(np.isfinite(xs) & (xs >= 0.0) & (xs <= 1.0)):
        raise ArgDomainError("x must lie in [0, 1]")
    mod = kernels.load_backend()
    v, e, _, st = mod.arcsin_batch(xs, params.p, params.q, rel_tol)
    _raise_bad(st, xs.size, "arcsin", params)
    return v, np.maximum(e, 2e-16 * np.abs(v))


def arccos_pq(params: PQParams, x: float, rel_tol: float = 1e-12) -> EvalResult:
    """arcsin_pq evaluated at (1 - x^p)^(1/q)."""
    _check_rel_tol(rel_tol)
    x = float(x)
    if not (math.isfinite(x) and 0.0 <= x <= 1.0):
        raise ArgDomainError("x must lie in [0, 1]")
    if x == 0.0:
        pi_half, pi_err, _, _, _ = _consts(params, rel_tol)
        return EvalResult(pi_half, pi_err)
    if x == 1.0:
        return EvalResult(0.0, 0.0)
    om = -math.expm1(params.p * math.log(x))  # 1 - x^p
    w = math.exp(math.log(om) / params.q)
    base = arcsin_pq(params, w, rel_tol)
    # sensitivity of the composition to the rounding of w
    omq = -math.expm1(params.q * math.log(w)) if w > 0.0 else 1.0
    slope = math.exp(-math.log(omq) / params.p) if omq > 0.0 else math.inf
    extra = 4e-16 * w * slope
    if not math.isfinite(extra):
        extra = 0.0
    return EvalResult(base.value, base.abs_err_est + extra)


def arcsinh_pq(params: PQParams, x: float, rel_tol: float = 1e-12) -> EvalResult:
    """Integral of (1+t^q)^(-1/p) from 0 to x, for x >= 0."""
    _check_rel_tol(rel_tol)
    x = float(x)
    if not (math.isfinite(x) and x >= 0.0):
        raise ArgDomainError("x must be finite and >= 0")
    if x == 0.0:
        return EvalResult(0.0, 0.0)
    v, e = arcsinh_pq_many(params, np.array([x]), rel_tol)
    return EvalResult(float(v[0]), float(e[0]))


def arcsinh_pq_many(params: PQParams, x, rel_tol: float = 1e-12):
    _check_rel_tol(rel_tol)
    xs = np.ascontiguousarray(x, dtype=np.float64)
    if xs.size and not np.all(np.isfinite(xs) & (xs >= 0.0)):
        raise ArgDomainError("x must be finite and >= 0")
    mod = kernels.load_backend()
    v, e, _, st = mod.arcsinh_batch(xs, params.p, params.q, rel_tol)
    _raise_bad(st, xs.size, "arcsinh", params)
    return v, np.maximum(e, 2e-16 * np.abs(v))


def sin_pq(params: PQParams, y: float, rel_tol: float = 1e-12) -> EvalResult:
    """Inverse of arcsin_pq on the principal branch [0, pi_pq/2]."""
    _check_rel_tol(rel_tol)
    y = float(y)
    pi_half, _, _, _, _ = _consts(params, rel_tol)
    if not math.isfinite(y) or y < 0.0 or y > pi_half * (1.0 + _GRACE):
        raise ArgDomainError(f"y must lie in [0, pi_pq/2] = [0, {pi_half!r}]")
    if y == 0.0:
        return EvalResult(0.0, 0.0)
    if y >= pi_half:
        return EvalResult(1.0, 0.0)
    v, e = sin_pq_many(params, np.array([y]), rel_tol)
    return EvalResult(float(v[0]), float(e[0]))


def sin_pq_many(params: PQParams, y, rel_tol: float = 1e-12):
    _check_rel_tol(rel_tol)
    ys = np.ascontiguousarray(y, dtype=np.float64)
    pi_half, _, _, _, _ = _consts(params, rel_tol)
    if ys.size and not np.all(np.isfinite(ys) & (ys >= 0.0)
                              & (ys <= pi_half * (1.0 + _GRACE))):
        raise ArgDomainError(f"y must lie in [0, pi_pq/2] = [0, {pi_half!r}]")
    mod = kernels.load_backend()
    v, e, _, st = mod.sin_batch(np.minimum(ys, pi_half), params.p, params.q,
                                rel_tol, pi_half)
    _raise_bad(st, ys.size, "sin", params)
    return v, np.maximum(e, 2e-16 * np.abs(v))


def cos_pq(params: PQParams, y: float, rel_tol: float = 1e-12) -> EvalResult:
    """(1 - sin_pq(y)^q)^(1/p); decreases from 1 to 0 on the branch."""
    base = sin_pq(params, y, rel_tol)
    s = base.value
    if s == 0.0:
        return EvalResult(1.0, base.abs_err_est)
    if s == 1.0:
        return EvalResult(0.0, base.abs_err_est)
    p, q = params.p, params.q
    om = -math.expm1(q * math.log(s))  # 1 - s^q
    value = math.exp(math.log(om) / p)
    slope = (q / p) * math.exp((q - 1.0) * math.log(s)
                               + (1.0 / p - 1.0) * math.log(om))
    err = base.abs_err_est * slope + 2e-16 * value
    return EvalResult(value, err)


def sinh_pq(params: PQParams, y: float, rel_tol: float = 1e-12) -> EvalResult:
    """Inverse of arcsinh_pq; domain [0, m_star), all of [0, inf) if q <= p."""
    _check_rel_tol(rel_tol)
    y = float(y)
    _, _, m_star, _, _ = _consts(params, rel_tol)
    if not math.isfinite(y) or y < 0.0 or y >= m_star:
        raise ArgDomainError(
            f"y must lie in [0, m_star) = [0, {m_star!r})")
    if y == 0.0:
        return EvalResult(0.0, 0.0)
    v, e = sinh_pq_many(params, np.array([y]), rel_tol)
    return EvalResult(float(v[0]), float(e[0]))


def sinh_pq_many(params: PQParams, y, rel_tol: float = 1e-12):
    _check_rel_tol(rel_tol)
    ys = np.ascontiguousarray(y, dtype=np.float64)
    _, _, m_star, _, _ = _consts(params, rel_tol)
    if ys.size and not np.all(np.isfinite(ys) & (ys >= 0.0) & (ys < m_star)):
        raise ArgDomainError(f"y must lie in [0, m_star) = [0, {m_star!r})")
    mod = kernels.load_backend()
    v, e, _, st = mod.sinh_batch(ys, params.p, params.q, rel_tol)
    _raise_bad(st, ys.size, "sinh", params)
    return v, np.maximum(e, 2e-16 * np.abs(v))


def extend_sin(params: PQParams, y: float, rel_tol: float = 1e-12) -> EvalResult:
    """sin_pq on all of R: even about pi_pq/2, odd about 0, period 2*pi_pq.

    The defining material fixes only the principal branch; this extension
    mirrors the classical sine's symmetries.
    """
    _check_rel_tol(rel_tol)
    y = float(y)
    if not math.isfinite(y):
        raise ArgDomainError("y must be finite")
    if y < 0.0:
        # fold through the odd symmetry first so extend_sin(-y) is the
        # exact negation of extend_sin(y), with no fmod rounding between
        r = extend_sin(params, -y, rel_tol)
        return EvalResult(-r.value, r.abs_err_est)
    pi_half, _, _, _, _ = _consts(params, rel_tol)
    period = 4.0 * pi_half
    u = math.fmod(y, period)
    if u < 0.0:
        u += period
    if u <= pi_half:
        base, sign = u, 1.0
    elif u <= 2.0 * pi_half:
        base, sign = 2.0 * pi_half - u, 1.0
    elif u <= 3.0 * pi_half:
        base, sign = u - 2.0 * pi_half, -1.0
    else:
        base, sign = 4.0 * pi_half - u, -1.0
    base = min(max(base, 0.0), pi_half)
    r = sin_pq(params, base, rel_tol)
    return EvalResult(sign * r.value, r.abs_err_est)


def sin_pq_derivative(params: PQParams, y: float,
                      rel_tol: float = 1e-12) -> EvalResult:
    """d/dy sin_pq(y) = (1 - sin_pq(y)^q)^(1/p), i.e. cos_pq(y).

    The right endpoint returns the one-sided limit 0.
    """
    return cos_pq(params, y, rel_tol)


def _raise_bad(status, n: int, name: str, params: PQParams) -> None:
    bad = int(np.count_nonzero(status))
    if bad:
        raise NonConvergence(
            f"{name} evaluation failed to converge at {bad} of {n} points "
            f"for (p, q)=({params.p}, {params.q})")
