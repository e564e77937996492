"""Pure numpy backend for the generalized trig kernels.

Both backends (this module and the numba twin) implement the same
double-exponential scheme; `pqtrig.kernels` picks one at import time.
Everything here is vectorized over evaluation points and uses the scaled
substitution t = x*u with expm1/log1p forms so the endpoint singularity of
(1 - t**q)**(-1/p) is evaluated without cancellation.

Status codes returned by the batch routines: 0 converged, 1 quadrature did
not converge within the level budget, 2 root finding did not converge.
"""

from __future__ import annotations

import numpy as np

HALF_PI = np.pi / 2.0
LEVEL_MAX = 10
KH_PLAIN = 6.1   # exp(-2z) < 1e-280 past kh ~ 6.02; later weights are dead
KH_SING = 12.0   # log-space tail, needed only when some x == 1 exactly
KH_INF = 17.0    # semi-infinite integrals with decay rate q/p - 1 near zero
EX_FLOOR = 1e-280  # below this, w*f can hit inf*0; switch to log space
_LOG_HALF = float(np.log(0.5))


def _new_kh(level: int, h: float, kh_max: float) -> np.ndarray:
    """Abscissae k*h introduced at this level (k >= 1; center is separate)."""
    if level == 0:
        k = np.arange(1.0, np.floor(kh_max / h) + 1.0)
    else:
        k = np.arange(1.0, np.floor(kh_max / h) + 1.0, 2.0)
    return k * h


def _softplus(v: np.ndarray) -> np.ndarray:
    # log(1 + e^v) without overflow; exact 0 for v = -inf
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.where(v > 0.0, v, 0.0) + np.log1p(np.exp(-np.abs(v)))
    return out


def _ts_nodes(kh: np.ndarray):
    """Weights and endpoint distances for tanh-sinh nodes on (0, 1)."""
    z = HALF_PI * np.sinh(kh)
    ex = np.exp(-2.0 * z)
    w = HALF_PI * np.cosh(kh) * 2.0 * ex / (1.0 + ex) ** 2
    delta = ex / (1.0 + ex)
    return z, ex, w, delta


def arcsin_batch(x, p, q, rel_tol):
    """Vectorized arcsin_pq via tanh-sinh on t = x*u, u in (0, 1).

    Returns (values, abs_err_est, n_evals, status) as same-length arrays.
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n = x.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    pos = x > 0.0
    if not np.any(pos):
        return vals, errs, nevals, status

    xs = x[pos]
    m = xs.size
    at_one = xs == 1.0
    any_one = bool(np.any(at_one))
    kh_max = KH_SING if any_one else KH_PLAIN
    lx = np.log(xs)
    lq = np.log(q)

    # center node u = 1/2 carries weight pi/4
    om0 = -np.expm1(q * (lx + _LOG_HALF))
    S = (np.pi / 4.0) * np.exp(-np.log(om0) / p)
    ne = np.ones(m, dtype=np.int64)

    val = np.zeros(m)
    err = np.full(m, np.inf)
    prev = np.full(m, np.inf)
    active = np.ones(m, dtype=bool)
    tail_log = -np.inf

    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kh = _new_kh(level, h, kh_max)
        z, ex, w, delta = _ts_nodes(kh)
        fin = ex >= EX_FLOOR

        idx = np.nonzero(active)[0]
        lxi = lx[idx]
        with np.errstate(divide="ignore", over="ignore", under="ignore",
                         invalid="ignore"):
            l1md = np.log1p(-delta[fin])
            ld = np.log(delta[fin])
            om_hi = -np.expm1(q * (lxi[:, None] + l1md[None, :]))
            om_lo = -np.expm1(q * (lxi[:, None] + ld[None, :]))
            f = np.exp(-np.log(om_hi) / p) + np.exp(-np.log(om_lo) / p)
            S[idx] += (w[fin][None, :] * f).sum(axis=1)
        ne[idx] += 2 * int(fin.sum())

        if any_one:
            # x == 1 tail past weight underflow: om ~ q*delta, all in logs
            zt = z[~fin]
            if zt.size:
                logtail = (np.log(np.pi * np.cosh(kh[~fin])) - 2.0 * zt
                           + (2.0 * zt - lq) / p)
                tail_sum = np.exp(logtail).sum()
                one_act = active & at_one
                S[one_act] += tail_sum
                ne[one_act] += zt.size
                tail_log = logtail[-1]

        cur = h * S[idx] * xs[idx]
        e = np.abs(cur - prev[idx])
        if any_one and np.isfinite(tail_log):
            # truncation floor for the singular tail (relevant only as p -> 1)
            e = e + np.where(at_one[idx], 8.0 * h * np.exp(tail_log), 0.0)
        val[idx] = cur
        err[idx] = e
        prev[idx] = cur
        if level >= 2:
            done = e <= rel_tol * np.abs(cur)
            active[idx[done]] = False
            if not np.any(active):
                break

    status_s = np.where(active, np.int8(1), np.int8(0))
    vals[pos] = val
    errs[pos] = err
    nevals[pos] = ne
    status[pos] = status_s
    return vals, errs, nevals, status


def arcsinh_batch(x, p, q, rel_tol):
    """Vectorized arcsinh_pq via tanh-sinh on t = x*u; integrand <= 1."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n = x.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)
    pos = x > 0.0
    if not np.any(pos):
        return vals, errs, nevals, status

    xs = x[pos]
    m = xs.size
    lx = np.log(xs)

    S = (np.pi / 4.0) * np.exp(-_softplus(q * (lx + _LOG_HALF)) / p)
    ne = np.ones(m, dtype=np.int64)

    val = np.zeros(m)
    err = np.full(m, np.inf)
    prev = np.full(m, np.inf)
    active = np.ones(m, dtype=bool)

    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kh = _new_kh(level, h, KH_PLAIN)
        z, ex, w, delta = _ts_nodes(kh)
        fin = ex >= EX_FLOOR
        idx = np.nonzero(active)[0]
        lxi = lx[idx]
        with np.errstate(divide="ignore", invalid="ignore"):
            l1md = np.log1p(-delta[fin])
            ld = np.log(delta[fin])
            f = (np.exp(-_softplus(q * (lxi[:, None] + l1md[None, :])) / p)
                 + np.exp(-_softplus(q * (lxi[:, None] + ld[None, :])) / p))
        S[idx] += (w[fin][None, :] * f).sum(axis=1)
        ne[idx] += 2 * int(fin.sum())

        cur = h * S[idx] * xs[idx]
        e = np.abs(cur - prev[idx])
        val[idx] = cur
        err[idx] = e
        prev[idx] = cur
        if level >= 2:
            done = e <= rel_tol * np.abs(cur)
            active[idx[done]] = False
            if not np.any(active):
                break

    vals[pos] = val
    errs[pos] = err
    nevals[pos] = ne
    status[pos] = np.where(active, np.int8(1), np.int8(0))
    return vals, errs, nevals, status


def mstar_quad(p, q, rel_tol):
    """Exp-sinh value of the total hyperbolic length; assumes q > p.

    Integrates in y = q*log(t), where the crossover of (1 + t**q)**(-1/p)
    is O(1) wide for every q: m* = (1/q) * int exp(y/q - softplus(y)/p) dy.
    Returns (value, abs_err_est, n_evals, status).
    """
    def g(y):
        return np.exp(y / q - _softplus(y) / p)

    S = HALF_PI * g(np.array([0.0]))[0]
    ne = 1
    val = 0.0
    err = np.inf
    prev = np.inf
    h = 1.0
    for level in range(LEVEL_MAX + 1):
        if level > 0:
            h *= 0.5
        kh = _new_kh(level, h, KH_INF)
        u = HALF_PI * np.sinh(kh)
        w = HALF_PI * np.cosh(kh)
        S += float((w * (g(u) + g(-u))).sum())
        ne += 2 * kh.size
        val = h * S / q
        err = abs(val - prev)
        prev = val
        if level >= 2 and err <= rel_tol * abs(val):
            return val, err, ne, 0
    return val, err, ne, 1


def sin_batch(y, p, q, rel_tol, pi_half):
    """Invert arcsin_pq by synchronized Newton from above (F is convex)."""
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    n = y.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)

    hit_top = y >= pi_half
    vals[hit_top] = 1.0
    work = np.nonzero((y > 0.0) & ~hit_top)[0]
    if work.size == 0:
        return vals, errs, nevals, status

    ty = y[work]
    t = np.minimum(ty, 1.0 - 1e-16)
    lo = np.zeros(work.size)
    hi = np.ones(work.size)
    lo_res = -ty                # F(0) - y
    hi_res = pi_half - ty       # F(1) - y
    live = np.arange(work.size)
    qr = 0.1 * rel_tol
    res_tol = 0.5 * rel_tol * (1.0 + ty)
    newton_ok = np.zeros(work.size, dtype=bool)

    for _ in range(80):
        tl = t[live]
        F, fe, ne, st = arcsin_batch(tl, p, q, qr)
        nevals[work[live]] += ne
        status[work[live]] = np.where(st != 0, np.int8(1), status[work[live]])
        resid = F - ty[live]
        om = -np.expm1(q * np.log(tl))
        dinv = np.exp(np.log(om) / p)  # 1/F'(t)

        up = resid > 0.0
        moved_hi = up & (tl < hi[live])
        moved_lo = ~up & (tl > lo[live])
        hi[live] = np.where(moved_hi, tl, hi[live])
        hi_res[live] = np.where(moved_hi, resid, hi_res[live])
        lo[live] = np.where(moved_lo, tl, lo[live])
        lo_res[live] = np.where(moved_lo, resid, lo_res[live])

        by_res = np.abs(resid) <= res_tol[live]
        by_gap = hi[live] - lo[live] <= 4e-16 * hi[live]
        # when the root falls between adjacent doubles, settle on the
        # bracket end whose residual is smaller (it may be t = 1 itself)
        pick_hi = ~by_res & by_gap & (np.abs(hi_res[live])
                                      < np.abs(lo_res[live]))
        pick_lo = ~by_res & by_gap & ~pick_hi
        out_t = np.where(pick_hi, hi[live], np.where(pick_lo, lo[live], tl))
        out_r = np.where(pick_hi, hi_res[live],
                         np.where(pick_lo, lo_res[live], resid))
        errs[work[live]] = (np.abs(out_r) + fe) * dinv
        done = by_res | by_gap
        newton_ok[live[done]] = True
        vals[work[live]] = out_t

        keep = ~done
        if not np.any(keep):
            break
        lv = live[keep]
        tn = tl[keep] - resid[keep] * dinv[keep]
        bad = (tn <= lo[lv]) | (tn >= hi[lv])
        tn = np.where(bad, 0.5 * (lo[lv] + hi[lv]), tn)
        t[lv] = tn
        live = lv

    status[work[~newton_ok]] = np.int8(2)
    return vals, errs, nevals, status


def sinh_batch(y, p, q, rel_tol):
    """Invert arcsinh_pq by synchronized Newton from below (H is concave)."""
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    n = y.size
    vals = np.zeros(n)
    errs = np.zeros(n)
    nevals = np.zeros(n, dtype=np.int64)
    status = np.zeros(n, dtype=np.int8)

    work = np.nonzero(y > 0.0)[0]
    if work.size == 0:
        return vals, errs, nevals, status

    ty = y[work]
    t = ty.copy()  # H(t) <= t, so start below the root
    lo = np.zeros(work.size)
    hi = np.full(work.size, np.inf)
    lo_res = -ty                # H(0) - y
    hi_res = np.full(work.size, np.inf)
    live = np.arange(work.size)
    qr = 0.1 * rel_tol
    res_tol = 0.5 * rel_tol * (1.0 + ty)
    newton_ok = np.zeros(work.size, dtype=bool)

    # y beyond m_star has no root; the runaway iterates overflow harmlessly
    # and the point ends with status 2, so suppress those warnings
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(120):
            tl = t[live]
            H, fe, ne, st = arcsinh_batch(tl, p, q, qr)
            nevals[work[live]] += ne
            status[work[live]] = np.where(st != 0, np.int8(1),
                                          status[work[live]])
            resid = H - ty[live]
            dinv = np.exp(_softplus(q * np.log(tl)) / p)  # 1/H'(t)

            up = resid > 0.0
            moved_hi = up & (tl < hi[live])
            moved_lo = ~up & (tl > lo[live])
            hi[live] = np.where(moved_hi, tl, hi[live])
            hi_res[live] = np.where(moved_hi, resid, hi_res[live])
            lo[live] = np.where(moved_lo, tl, lo[live])
            lo_res[live] = np.where(moved_lo, resid, lo_res[live])

            by_res = np.abs(resid) <= res_tol[live]
            by_gap = np.isfinite(hi[live]) & (hi[live] - lo[live]
                                              <= 4e-16 * hi[live])
            pick_hi = ~by_res & by_gap & (np.abs(hi_res[live])
                                          < np.abs(lo_res[live]))
            pick_lo = ~by_res & by_gap & ~pick_hi
            out_t = np.where(pick_hi, hi[live],
                             np.where(pick_lo, lo[live], tl))
            out_r = np.where(pick_hi, hi_res[live],
                             np.where(pick_lo, lo_res[live], resid))
            errs[work[live]] = (np.abs(out_r) + fe) * dinv
            done = by_res | by_gap
            newton_ok[live[done]] = True
            vals[work[live]] = out_t

            keep = ~done
            if not np.any(keep):
                break
            lv = live[keep]
            tn = tl[keep] - resid[keep] * dinv[keep]
            bad = (tn <= lo[lv]) | (tn >= hi[lv]) | ~np.isfinite(tn)
            if np.any(bad):
                fb = np.where(np.isfinite(hi[lv]),
                              np.sqrt(np.maximum(lo[lv], 1e-300) * hi[lv]),
                              np.maximum(2.0 * np.maximum(lo[lv], ty[lv]),
                                         1.0))
                tn = np.where(bad, fb, tn)
            t[lv] = tn
            live = lv

    status[work[~newton_ok]] = np.int8(2)
    return vals, errs, nevals, status
