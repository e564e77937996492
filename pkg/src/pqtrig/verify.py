"""Sampling verifier for the concavity/convexity claims.

Targets:

- ``gc-sin``    sin_pq is geometrically concave on (0, 1): for r, s there
                and lam in [0, 1], sin(r^lam s^(1-lam)) >= sin(r)^lam sin(s)^(1-lam).
- ``gc-sinh``   sinh_pq is geometrically convex on its sampled interval.
- ``ineq-1.1``  half-weight case of gc-sin: sin(sqrt(rs)) >= sqrt(sin(r) sin(s)).
- ``ineq-1.2``  half-weight case of gc-sinh: sinh(sqrt(rs)) <= sqrt(sinh(r) sinh(s)).
- ``corollary-p``  both half-weight inequalities at q = p on the shared
                interval (0, 1).

Margins are oriented so that nonnegative means the claim held at that
sample; the verdict is "verified" when the worst margin stays above -tol,
"violated" otherwise, and "inconclusive" if evaluation itself failed to
converge. Sampling is deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import core
from ._lds import sample_unit
from .errors import ArgDomainError, DomainError, NonConvergence

TARGETS = ("gc-sin", "gc-sinh", "ineq-1.1", "ineq-1.2", "corollary-p")

LO_CUT = 1e-6  # log sampling needs a positive floor
VIOLATION_CAP = 1000


@dataclass(frozen=True)
class VerificationReport:
    target: str
    p: float
    q: float
    samples: int
    seed: int
    tol: float
    sampling_interval: tuple[float, float]
    min_margin: float
    violations: list  # rows (r, s, lam, lhs, rhs, margin), worst first
    verdict: str


def _interval(target: str, params: core.PQParams, rel_tol: float,
              full_branch: bool) -> tuple[float, float]:
    if target in ("gc-sin", "ineq-1.1"):
        if full_branch:
            pi_half = 0.5 * core.constants(params, rel_tol).pi_pq
            return (LO_CUT, pi_half * (1.0 - 1e-12))
        return (LO_CUT, 1.0)
    if target in ("gc-sinh", "ineq-1.2"):
        m_star = core.constants(params, rel_tol).m_star
        if full_branch:
            hi = 0.999 * m_star if math.isfinite(m_star) else 10.0
        else:
            hi = min(1.0, 0.999 * m_star)
        return (LO_CUT, hi)
    # corollary-p: q = p makes m_star infinite, both claims share (0, 1)
    return (LO_CUT, 1.0)


def _margins(target: str, params: core.PQParams, r: np.ndarray, s: np.ndarray,
             lam: np.ndarray, rel_tol: float):
    """Oriented margins plus the lhs/rhs arrays that produced them."""
    g = r ** lam * s ** (1.0 - lam)
    # sqrt is exact on exact squares, so r = s gives a margin of exactly 0
    half = lam == 0.5
    if half.any():
        g = np.where(half, np.sqrt(r * s), g)
    pts = np.concatenate([r, s, g])
    n = r.size
    if target in ("gc-sin", "ineq-1.1"):
        vals = core.sin_pq_many(params, pts, rel_tol)[0]
    else:
        vals = core.sinh_pq_many(params, pts, rel_tol)[0]
    fr, fs, fg = vals[:n], vals[n:2 * n], vals[2 * n:]
    lhs = fg
    rhs = fr ** lam * fs ** (1.0 - lam)
    if half.any():
        rhs = np.where(half, np.sqrt(fr * fs), rhs)
    if target in ("gc-sin", "ineq-1.1"):
        margin = lhs - rhs  # concave side: mean of args wins
    else:
        margin = rhs - lhs  # convex side: mean of values wins
    return margin, lhs, rhs


def run_verification(target: str, params: core.PQParams, samples: int = 10000,
                     seed: int = 0, tol: float = 1e-9, rel_tol: float = 1e-12,
                     fixed: Optional[Sequence[float]] = None,
                     full_branch: bool = False) -> VerificationReport:
    """Check one target by low-discrepancy sampling or at one fixed triple.

    ``fixed`` is (r, s) or (r, s, lam); it overrides ``samples``/``seed``
    and still validates against the target's sampling interval. lam is
    forced to 0.5 for the half-weight targets.
    """
    if target not in TARGETS:
        raise DomainError(f"unknown target {target!r}; expected one of "
                          f"{', '.join(TARGETS)}")
    if target == "corollary-p" and params.p != params.q:
        raise DomainError("corollary-p requires q = p")
    if samples < 1:
        raise DomainError("samples must be >= 1")

    lo, hi = _interval(target, params, rel_tol, full_branch)
    half_weight = target in ("ineq-1.1", "ineq-1.2", "corollary-p")

    if fixed is not None:
        if len(fixed) == 2:
            r0, s0 = map(float, fixed)
            l0 = 0.5
        else:
            r0, s0, l0 = map(float, fixed)
        if half_weight:
            l0 = 0.5
        for name, v in (("r", r0), ("s", s0)):
            if not (0.0 < v < hi):
                raise ArgDomainError(
                    f"{name} = {v!r} must lie in (0, {hi!r}) for {target}")
        if not (0.0 <= l0 <= 1.0):
            raise ArgDomainError("lambda must lie in [0, 1]")
        r = np.array([r0])
        s = np.array([s0])
        lam = np.array([l0])
        samples = 1
    else:
        u = sample_unit(samples, 3, seed)
        span = math.log(hi) - math.log(lo)
        r = np.exp(math.log(lo) + u[:, 0] * span)
        s = np.exp(math.log(lo) + u[:, 1] * span)
        lam = np.full(samples, 0.5) if half_weight else u[:, 2]

    try:
        if target == "corollary-p":
            m1, l1, r1 = _margins("ineq-1.1", params, r, s, lam, rel_tol)
            m2, l2, r2 = _margins("ineq-1.2", params, r, s, lam, rel_tol)
            margin = np.concatenate([m1, m2])
            lhs = np.concatenate([l1, l2])
            rhs = np.concatenate([r1, r2])
            rr = np.concatenate([r, r])
            ss = np.concatenate([s, s])
            ll = np.concatenate([lam, lam])
        else:
            margin, lhs, rhs = _margins(target, params, r, s, lam, rel_tol)
            rr, ss, ll = r, s, lam
    except NonConvergence:
        return VerificationReport(target, params.p, params.q, samples, seed,
                                  tol, (lo, hi), 0.0, [], "inconclusive")

    min_margin = float(margin.min())
    bad = np.flatnonzero(margin < -tol)
    bad = bad[np.argsort(margin[bad])][:VIOLATION_CAP]
    violations = [(float(rr[i]), float(ss[i]), float(ll[i]),
                   float(lhs[i]), float(rhs[i]), float(margin[i]))
                  for i in bad]
    verdict = "verified" if not violations else "violated"
    return VerificationReport(target, params.p, params.q, samples, seed, tol,
                              (lo, hi), min_margin, violations, verdict)
