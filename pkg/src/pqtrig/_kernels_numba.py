"""Numba backend: serial scalar kernels with warm-started Newton batches.

Same contract and status codes as the numpy twin (`_kernels_numpy`), same
double-exponential scheme. Batches sort their targets so each root starts
from a tangent extrapolation of the previous one, which cuts Newton to one
or two quadratures per point. Compiled lazily with cache=True.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

HALF_PI = math.pi / 2.0
LEVEL_MAX = 10
KH_PLAIN = 6.1
KH_SING = 12.0
KH_INF = 17.0
EX_FLOOR = 1e-280
LOG_HALF = math.log(0.5)


@njit(cache=True)
def _softplus(v):
    if v > 0.0:
        return v + math.log1p(math.exp(-v))
    return math.log1p(math.exp(v))


@njit(cache=True)
def _om(t, q):
    # 1 - t**q without cancellation as t -> 1
    if t <= 0.0:
        return 1.0
    return -math.expm1(q * math.log(t))


@njit(cache=True)
def _arcsin_scalar(x, p, q, rel_tol):
    """tanh-sinh for the inverse generalized sine; returns (val, err, ne, ok)."""
    if x <= 0.0:
        return 0.0, 0.0, 0, True
    at_one = x == 1.0
    kh_max = KH_SING if at_one else KH_PLAIN
    lx = math.log(x)
    lq = math.log(q)
    tau = 1e-3 * rel_tol

    om0 = -math.expm1(q * (lx + LOG_HALF))
    S = (math.pi / 4.0) * math.exp(-math.log(om0) / p)
    ne = 1

    val = 0.0
    err = np.inf
    prev = np.inf
    tail_log = -np.inf
    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kmax = int(kh_max / h)
        step = 1 if level == 0 else 2
        tiny = 0
        for k in range(1, kmax + 1, step):
            kh = k * h
            z = HALF_PI * math.sinh(kh)
            ex = math.exp(-2.0 * z)
            ch = math.cosh(kh)
            if ex < EX_FLOOR:
                if not at_one:
                    break
                lt = math.log(math.pi * ch) - 2.0 * z + (2.0 * z - lq) / p
                term = math.exp(lt)
                tail_log = lt
                ne += 1
            else:
                delta = ex / (1.0 + ex)
                w = HALF_PI * ch * 2.0 * ex / ((1.0 + ex) * (1.0 + ex))
                om_hi = -math.expm1(q * (lx + math.log1p(-delta)))
                om_lo = -math.expm1(q * (lx + math.log(delta)))
                term = w * (math.exp(-math.log(om_hi) / p)
                            + math.exp(-math.log(om_lo) / p))
                ne += 2
            S += term
            if term <= tau * S:
                tiny += 1
                if tiny >= 2:
                    break
            else:
                tiny = 0
        val = h * S * x
        err = abs(val - prev)
        if at_one and tail_log > -np.inf:
            err += 8.0 * h * math.exp(tail_log)
        prev = val
        if level >= 2 and err <= rel_tol * abs(val):
            return val, err, ne, True
    return val, err, ne, False


@njit(cache=True)
def _arcsinh_scalar(x, p, q, rel_tol):
    """tanh-sinh for the inverse generalized hyperbolic sine."""
    if x <= 0.0:
        return 0.0, 0.0, 0, True
    lx = math.log(x)
    tau = 1e-3 * rel_tol

    S = (math.pi / 4.0) * math.exp(-_softplus(q * (lx + LOG_HALF)) / p)
    ne = 1

    val = 0.0
    err = np.inf
    prev = np.inf
    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kmax = int(KH_PLAIN / h)
        step = 1 if level == 0 else 2
        tiny = 0
        for k in range(1, kmax + 1, step):
            kh = k * h
            z = HALF_PI * math.sinh(kh)
            ex = math.exp(-2.0 * z)
            if ex < EX_FLOOR:
                break
            ch = math.cosh(kh)
            delta = ex / (1.0 + ex)
            w = HALF_PI * ch * 2.0 * ex / ((1.0 + ex) * (1.0 + ex))
            f_hi = math.exp(-_softplus(q * (lx + math.log1p(-delta))) / p)
            f_lo = math.exp(-_softplus(q * (lx + math.log(delta))) / p)
            term = w * (f_hi + f_lo)
            S += term
            ne += 2
            # the integrand is <= 1 but can dip near the centre (x > 1 with
            # large q), so a tiny term alone must not end the sweep: insist
            # the weight envelope itself is negligible too
            if term <= tau * S and w <= tau * S:
                tiny += 1
                if tiny >= 2:
                    break
            else:
                tiny = 0
        val = h * S * x
        err = abs(val - prev)
        prev = val
        if level >= 2 and err <= rel_tol * abs(val):
            return val, err, ne, True
    return val, err, ne, False


@njit(cache=True)
def mstar_quad(p, q, rel_tol):
    """exp-sinh for the total hyperbolic length; assumes q > p.

    Integrates in y = q*log(t), where the crossover of (1 + t**q)**(-1/p)
    is O(1) wide for every q: m* = (1/q) * int exp(y/q - softplus(y)/p) dy.
    """
    tau = 1e-3 * rel_tol
    S = HALF_PI * math.exp(-_softplus(0.0) / p)
    ne = 1
    val = 0.0
    err = np.inf
    prev = np.inf
    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kmax = int(KH_INF / h)
        step = 1 if level == 0 else 2
        tiny = 0
        for k in range(1, kmax + 1, step):
            kh = k * h
            u = HALF_PI * math.sinh(kh)
            w = HALF_PI * math.cosh(kh)
            g_hi = math.exp(u / q - _softplus(u) / p)
            g_lo = math.exp(-u / q - _softplus(-u) / p)
            term = w * (g_hi + g_lo)
            S += term
            ne += 2
            if term <= tau * S:
                tiny += 1
                if tiny >= 2:
                    break
            else:
                tiny = 0
        val = h * S / q
        err = abs(val - prev)
        prev = val
        if level >= 2 and err <= rel_tol * abs(val):
            return val, err, ne, 0
    return val, err, ne, 1


@njit(cache=True)
def arcsin_batch(x, p, q, rel_tol):
    n = x.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    for i in range(n):
        v, e, ne, ok = _arcsin_scalar(x[i], p, q, rel_tol)
        vals[i] = v
        errs[i] = e
        nevals[i] = ne
        if not ok:
            status[i] = 1
    return vals, errs, nevals, status


@njit(cache=True)
def arcsinh_batch(x, p, q, rel_tol):
    n = x.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    for i in range(n):
        v, e, ne, ok = _arcsinh_scalar(x[i], p, q, rel_tol)
        vals[i] = v
        errs[i] = e
        nevals[i] = ne
        if not ok:
            status[i] = 1
    return vals, errs, nevals, status


@njit(cache=True)
def _sin_newton(y, p, q, rel_tol, t0, pi_half):
    # F is convex, so from t0 >= root the iteration descends monotonically
    lo = 0.0
    hi = 1.0
    lo_res = -y            # F(0) - y
    hi_res = pi_half - y   # F(1) - y
    t = t0
    qr = 0.1 * rel_tol
    rtol = 0.5 * rel_tol * (1.0 + y)
    err = np.inf
    ne = 0
    for _ in range(80):
        F, fe, n1, k1 = _arcsin_scalar(t, p, q, qr)
        ne += n1
        resid = F - y
        dinv = math.exp(math.log(_om(t, q)) / p)  # 1/F'(t)
        err = (abs(resid) + fe) * dinv
        if resid > 0.0:
            if t < hi:
                hi = t
                hi_res = resid
        elif t > lo:
            lo = t
            lo_res = resid
        if abs(resid) <= rtol:
            return t, err, ne, k1
        if hi - lo <= 4e-16 * hi:
            # the root sits between adjacent doubles; settle on the
            # bracket end with the smaller residual (often t = 1 itself)
            if abs(hi_res) < abs(lo_res):
                t = hi
                resid = hi_res
            else:
                t = lo
                resid = lo_res
            err = (abs(resid) + fe) * dinv
            return t, err, ne, k1
        tn = t - resid * dinv
        if tn <= lo or tn >= hi:
            tn = 0.5 * (lo + hi)
        t = tn
    return t, err, ne, False


@njit(cache=True)
def sin_batch(y, p, q, rel_tol, pi_half):
    n = y.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    order = np.argsort(y)
    prev_t = 0.0
    prev_y = 0.0
    prev_dinv = 1.0
    for j in range(n):
        i = order[j]
        yi = y[i]
        if yi <= 0.0:
            continue
        if yi >= pi_half:
            vals[i] = 1.0
            continue
        t0 = prev_t + (yi - prev_y) * prev_dinv
        if t0 > 1.0 - 1e-16:
            t0 = 1.0 - 1e-16
        t, e, ne, ok = _sin_newton(yi, p, q, rel_tol, t0, pi_half)
        vals[i] = t
        errs[i] = e
        nevals[i] = ne
        if not ok:
            status[i] = 2
        prev_t = t
        prev_y = yi
        prev_dinv = math.exp(math.log(_om(t, q)) / p)
    return vals, errs, nevals, status


@njit(cache=True)
def _sinh_newton(y, p, q, rel_tol, t0):
    # H is concave, so from t0 <= root the iteration ascends monotonically
    lo = 0.0
    hi = np.inf
    lo_res = -y        # H(0) - y
    hi_res = np.inf
    t = t0
    qr = 0.1 * rel_tol
    rtol = 0.5 * rel_tol * (1.0 + y)
    err = np.inf
    ne = 0
    for _ in range(120):
        H, fe, n1, k1 = _arcsinh_scalar(t, p, q, qr)
        ne += n1
        resid = H - y
        dinv = math.exp(_softplus(q * math.log(t)) / p)  # 1/H'(t)
        err = (abs(resid) + fe) * dinv
        if resid > 0.0:
            if t < hi:
                hi = t
                hi_res = resid
        elif t > lo:
            lo = t
            lo_res = resid
        if abs(resid) <= rtol:
            return t, err, ne, k1
        if np.isfinite(hi) and hi - lo <= 4e-16 * hi:
            if abs(hi_res) < abs(lo_res):
                t = hi
                resid = hi_res
            else:
                t = lo
                resid = lo_res
            err = (abs(resid) + fe) * dinv
            return t, err, ne, k1
        tn = t - resid * dinv
        if not np.isfinite(tn) or tn <= lo or tn >= hi:
            if np.isfinite(hi):
                tn = math.sqrt(max(lo, 1e-300) * hi)
            else:
                tn = max(2.0 * t, 1.0)
        t = tn
    return t, err, ne, False


@njit(cache=True)
def sinh_batch(y, p, q, rel_tol):
    n = y.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    order = np.argsort(y)
    prev_t = 0.0
    prev_y = 0.0
    prev_dinv = 1.0
    for j in range(n):
        i = order[j]
        yi = y[i]
        if yi <= 0.0:
            continue
        t0 = prev_t + (yi - prev_y) * prev_dinv
        if not np.isfinite(t0) or t0 < yi:
            t0 = yi
        t, e, ne, ok = _sinh_newton(yi, p, q, rel_tol, t0)
        vals[i] = t
        errs[i] = e
        nevals[i] = ne
        if not ok:
            status[i] = 2
        prev_t = t
        prev_y = yi
        prev_dinv = math.exp(_softplus(q * math.log(t)) / p)
    return vals, errs, nevals, status
