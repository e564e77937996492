"""Series oracles for the forward maps, independent of any quadrature.

Termwise integration of the binomial expansion of (1 -+ t^q)^(-1/p) gives

    arcsin  series:  sum_k  [(1/p)_k / k!] * x^(qk+1) / (qk+1)
    arcsinh series:  sum_k  (-1)^k [(1/p)_k / k!] * x^(qk+1) / (qk+1)

with (a)_k the rising factorial. Terms are built by a multiplicative
recurrence, so nothing ever overflows; the alternating series carries the
first-omitted-term truncation bound. Convergence degrades as x -> 1, so
arguments above 0.9 are declined rather than extrapolated; quadrature is
authoritative there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import PQParams
from .errors import ArgDomainError, SlowConvergence

TERM_BUDGET = 10 ** 6
DECLINE_ABOVE = 0.9


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_bound: float


def _series(params: PQParams, x: float, tol: float, alternating: bool) -> SeriesResult:
    if not (math.isfinite(x) and 0.0 <= x < 1.0):
        raise ArgDomainError("x must lie in [0, 1)")
    if x > DECLINE_ABOVE:
        raise SlowConvergence(
            f"series oracle declines x = {x!r} > {DECLINE_ABOVE}; "
            "convergence is too slow near 1")
    if x == 0.0:
        return SeriesResult(0.0, 1, 0.0)

    p, q = params.p, params.q
    a = 1.0 / p
    xq = x ** q
    term = x          # k = 0: coefficient 1, power x^1 / 1
    terms = [term]
    running = term
    k = 0
    while k < TERM_BUDGET:
        # |term_{k+1}| = |term_k| * [(a+k)/(k+1)] * x^q * (qk+1)/(q(k+1)+1)
        qk1 = q * k + 1.0
        term = term * ((a + k) / (k + 1.0)) * xq * qk1 / (qk1 + q)
        k += 1
        # the ratio stays below x^q, so the tail has a geometric majorant;
        # the alternating tail is bounded by its first omitted term
        bound = term if alternating else term / (1.0 - xq)
        if bound <= 0.5 * tol * (abs(running) + 1e-300):
            return SeriesResult(math.fsum(terms), k, bound)
        signed = -term if (alternating and k % 2 == 1) else term
        terms.append(signed)
        running += signed
    raise SlowConvergence(
        f"series budget of {TERM_BUDGET} terms exhausted at x = {x!r}")


def arcsin_series(params: PQParams, x: float, tol: float = 1e-12) -> SeriesResult:
    """Positive-term series for arcsin_pq; valid for x in [0, 1), x <= 0.9."""
    return _series(params, x, tol, alternating=False)


def arcsinh_series(params: PQParams, x: float, tol: float = 1e-12) -> SeriesResult:
    """Alternating series for arcsinh_pq with first-omitted-term bound."""
    return _series(params, x, tol, alternating=True)
