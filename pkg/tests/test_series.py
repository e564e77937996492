"""Series oracles: recurrence correctness, truncation bounds, and the
quadrature cross-check that makes them useful as an independent witness."""

import math

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pqtrig import core, series
from pqtrig.errors import ArgDomainError, SlowConvergence

P22 = core.validate(2.0, 2.0)


def test_classical_reduction():
    for x in (0.05, 0.3, 0.6, 0.9):
        r = series.arcsin_series(P22, x, tol=1e-15)
        assert abs(r.value - math.asin(x)) < 1e-13
        h = series.arcsinh_series(P22, x, tol=1e-15)
        assert abs(h.value - math.asinh(x)) < 1e-13


def test_matches_simpson_oracle():
    for p in (1.5, 2.0, 3.7):
        for q in (1.5, 2.2, 5.0):
            params = core.validate(p, q)
            for x in (0.1, 0.5, 0.85):
                r = series.arcsin_series(params, x)
                assert abs(r.value - oracles.arcsin_simpson(p, q, x, 20000)) < 1e-11
                h = series.arcsinh_series(params, x)
                assert abs(h.value - oracles.arcsinh_simpson(p, q, x, 20000)) < 1e-11


def test_truncation_bound_is_honest():
    # quadrature and series err budgets must jointly cover the observed gap
    for p, q in [(1.5, 1.5), (2.0, 3.0), (5.0, 1.8), (11.0, 11.0)]:
        params = core.validate(p, q)
        for x in (0.2, 0.7, 0.9):
            for fn, qfn in ((series.arcsin_series, core.arcsin_pq),
                            (series.arcsinh_series, core.arcsinh_pq)):
                r = fn(params, x, tol=1e-13)
                ref = qfn(params, x, rel_tol=1e-13)
                slack = r.truncation_bound + ref.abs_err_est + 4e-16 * abs(r.value)
                assert abs(r.value - ref.value) <= slack + 1e-15


def test_bound_respects_requested_tol():
    params = core.validate(3.0, 2.0)
    tight = series.arcsin_series(params, 0.8, tol=1e-14)
    loose = series.arcsin_series(params, 0.8, tol=1e-6)
    assert loose.terms_used < tight.terms_used
    assert loose.truncation_bound <= 1e-6 * (abs(loose.value) + 1.0)
    assert tight.truncation_bound <= 1e-14 * (abs(tight.value) + 1.0)


def test_terms_grow_toward_the_slow_end():
    params = core.validate(2.0, 1.5)
    n_easy = series.arcsin_series(params, 0.3).terms_used
    n_hard = series.arcsin_series(params, 0.9).terms_used
    assert n_easy < n_hard
    assert n_hard < series.TERM_BUDGET


def test_declines_just_above_threshold():
    params = core.validate(2.0, 2.0)
    series.arcsin_series(params, series.DECLINE_ABOVE)  # boundary included
    for x in (0.9000000000000001, 0.95, 0.999):
        with pytest.raises(SlowConvergence):
            series.arcsin_series(params, x)
        with pytest.raises(SlowConvergence):
            series.arcsinh_series(params, x)


def test_rejects_arguments_outside_unit_interval():
    for bad in (-0.1, 1.0, 1.5, math.inf, math.nan):
        with pytest.raises(ArgDomainError):
            series.arcsin_series(P22, bad)
        with pytest.raises(ArgDomainError):
            series.arcsinh_series(P22, bad)


def test_zero_is_exact():
    r = series.arcsin_series(P22, 0.0)
    assert (r.value, r.terms_used, r.truncation_bound) == (0.0, 1, 0.0)
    h = series.arcsinh_series(P22, 0.0)
    assert (h.value, h.terms_used, h.truncation_bound) == (0.0, 1, 0.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1.05, max_value=10.0),
       st.floats(min_value=1.05, max_value=10.0),
       st.floats(min_value=1e-3, max_value=0.9))
def test_series_brackets_the_identity_map(p, q, x):
    # the circular integrand is >= 1 and the hyperbolic one is <= 1,
    # so arcsinh <= x <= arcsin pointwise
    params = core.validate(p, q)
    up = series.arcsin_series(params, x).value
    dn = series.arcsinh_series(params, x).value
    assert dn <= x * (1.0 + 1e-14)
    assert up >= x * (1.0 - 1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1.1, max_value=9.0),
       st.floats(min_value=1.1, max_value=9.0),
       st.floats(min_value=0.01, max_value=0.89))
def test_series_agrees_with_quadrature(p, q, x):
    params = core.validate(p, q)
    s = series.arcsin_series(params, x, tol=1e-13)
    v = core.arcsin_pq(params, x, rel_tol=1e-13)
    assert abs(s.value - v.value) < 1e-11 * (1.0 + abs(v.value))
    sh = series.arcsinh_series(params, x, tol=1e-13)
    vh = core.arcsinh_pq(params, x, rel_tol=1e-13)
    assert abs(sh.value - vh.value) < 1e-11 * (1.0 + abs(vh.value))
