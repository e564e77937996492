"""Verifier reports and the command line contract (formats, exit codes)."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from pqtrig import cli, core, verify
from pqtrig.errors import ArgDomainError, DomainError, NonConvergence

P22 = core.validate(2.0, 2.0)


# ---------------------------------------------------------------- library

def test_report_shape_and_intervals():
    rep = verify.run_verification("gc-sin", core.validate(2.0, 3.0),
                                  samples=200, seed=1)
    assert rep.sampling_interval == (1e-6, 1.0)
    assert rep.samples == 200 and rep.seed == 1
    assert rep.verdict == "verified" and rep.violations == []
    assert rep.min_margin >= -1e-9

    # hyperbolic targets stop short of m_star when it caps the interval
    params = core.validate(2.0, 2000.0)
    m_star = core.constants(params).m_star
    rep = verify.run_verification("ineq-1.2", params, samples=50)
    assert math.isfinite(m_star)
    assert rep.sampling_interval == (1e-6, min(1.0, 0.999 * m_star))


def test_half_weight_margin_is_exactly_zero_when_r_equals_s():
    for target, params in (("ineq-1.1", P22),
                           ("ineq-1.2", core.validate(2.0, 4.0)),
                           ("corollary-p", core.validate(3.0, 3.0))):
        rep = verify.run_verification(target, params, fixed=(0.7, 0.7))
        assert rep.min_margin == 0.0
        assert rep.verdict == "verified"
    # the full targets reduce to the same exact zero at lam = 1/2
    rep = verify.run_verification("gc-sinh", core.validate(2.0, 4.0),
                                  fixed=(0.3, 0.3, 0.5))
    assert rep.min_margin == 0.0


def test_fixed_example_against_classical_sine():
    # p = q = 2 reduces to sin, and sqrt(0.25*0.81) = 0.45 exactly
    oracle = math.sin(0.45) - math.sqrt(math.sin(0.25) * math.sin(0.81))
    rep = verify.run_verification("ineq-1.1", P22, fixed=(0.25, 0.81))
    assert rep.min_margin > 0.0
    assert rep.min_margin == pytest.approx(oracle, abs=1e-9)


def test_corollary_p_requires_equal_params():
    rep = verify.run_verification("corollary-p", core.validate(2.5, 2.5),
                                  samples=300)
    assert rep.verdict == "verified"
    with pytest.raises(DomainError):
        verify.run_verification("corollary-p", core.validate(2.0, 3.0))


def test_rejections():
    with pytest.raises(DomainError):
        verify.run_verification("gc-tan", P22)
    with pytest.raises(DomainError):
        verify.run_verification("gc-sin", P22, samples=0)
    with pytest.raises(ArgDomainError):
        verify.run_verification("ineq-1.2", core.validate(2.0, 4.0),
                                fixed=(1.5, 0.5))
    with pytest.raises(ArgDomainError):
        verify.run_verification("gc-sin", P22, fixed=(0.5, 0.5, 1.7))


def test_same_seed_reproduces_the_report():
    a = verify.run_verification("gc-sin", core.validate(3.0, 2.0),
                                samples=400, seed=11)
    b = verify.run_verification("gc-sin", core.validate(3.0, 2.0),
                                samples=400, seed=11)
    assert a == b


def test_nonconvergence_yields_inconclusive(monkeypatch):
    def boom(*a, **k):
        raise NonConvergence("forced for the test")
    monkeypatch.setattr(core, "sin_pq_many", boom)
    rep = verify.run_verification("gc-sin", P22, samples=10)
    assert rep.verdict == "inconclusive"
    assert rep.violations == [] and rep.min_margin == 0.0


# ---------------------------------------------------------------- CLI

def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "eval", "--fn", "sin", "--p", "2",
                           "--q", "2", "--x", repr(math.pi / 6.0))
    assert code == 0
    assert out.splitlines()[0] == "value: 0.5"
    assert out.splitlines()[1].startswith("abs_err_est: ")

    code, out, _ = run_cli(capsys, "eval", "--fn", "sin", "--p", "2",
                           "--q", "2", "--x", repr(math.pi / 6.0),
                           "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert list(obj) == ["fn", "p", "q", "x", "value", "abs_err_est"]
    assert obj["value"] == pytest.approx(0.5, abs=1e-12)


def test_eval_domain_errors_exit_2(capsys):
    code, _, err = run_cli(capsys, "eval", "--fn", "arcsin", "--p", "2",
                           "--q", "2", "--x", "1.5")
    assert code == 2
    assert "x must lie in [0, 1]" in err

    code, _, err = run_cli(capsys, "eval", "--fn", "sinh", "--p", "2",
                           "--q", "4", "--x", "1.9")
    assert code == 2
    assert "m_star" in err


def test_eval_usage_errors_exit_1(capsys):
    cases = [
        ("eval", "--fn", "secant", "--p", "2", "--q", "2", "--x", "0.5"),
        ("eval", "--fn", "sin", "--p", "2", "--x", "0.5"),
        ("eval", "--fn", "sin", "--p", "2", "--q", "2", "--x", "0.5",
         "--format", "csv"),
        ("eval", "--fn", "sin", "--p", "2", "--q", "2", "--x", "0.5",
         "--tol", "-1e-9"),
        ("nonsense",),
    ]
    for argv in cases:
        code, _, _ = run_cli(capsys, *argv)
        assert code == 1, argv


def test_const_rendering(capsys):
    code, out, _ = run_cli(capsys, "const", "--name", "pi", "--p", "2",
                           "--q", "2")
    assert code == 0 and out == "3.141592654\n"

    code, out, _ = run_cli(capsys, "const", "--name", "mstar", "--p", "2",
                           "--q", "2")
    assert code == 0 and out == "inf\n"

    code, out, _ = run_cli(capsys, "const", "--name", "mstar", "--p", "2",
                           "--q", "2", "--format", "json")
    obj = json.loads(out)
    assert obj["value"] == "inf"  # the token is a JSON string

    code, out, _ = run_cli(capsys, "const", "--name", "pi", "--p", "2",
                           "--q", "2", "--format", "json")
    assert json.loads(out)["value"] == pytest.approx(math.pi, abs=1e-12)


def test_table_csv_contract(capsys):
    code, out, _ = run_cli(capsys, "table", "--fn", "sin", "--p", "2",
                           "--q", "2", "--from", "0", "--to", "1.5",
                           "--steps", "4")
    assert code == 0
    assert "\r" not in out
    lines = out.splitlines()
    assert lines[0] == "x,value,abs_err_est"
    assert len(lines) == 5
    xs = [float(ln.split(",")[0]) for ln in lines[1:]]
    assert xs == pytest.approx(list(np.linspace(0.0, 1.5, 4)), abs=0.0)
    vals = [float(ln.split(",")[1]) for ln in lines[1:]]
    assert vals == pytest.approx([math.sin(x) for x in xs], abs=1e-11)


def test_table_json_and_usage(capsys):
    code, out, _ = run_cli(capsys, "table", "--fn", "arcsinh", "--p", "3",
                           "--q", "2", "--from", "0.1", "--to", "0.9",
                           "--steps", "3", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert [list(row) for row in obj["rows"]] == [
        ["x", "value", "abs_err_est"]] * 3

    for argv in (
        ("table", "--fn", "sin", "--p", "2", "--q", "2", "--from", "0",
         "--to", "1", "--steps", "1"),
        ("table", "--fn", "sin", "--p", "2", "--q", "2", "--from", "1",
         "--to", "0", "--steps", "5"),
        ("table", "--fn", "sin", "--p", "2", "--q", "2", "--from", "0",
         "--to", "1", "--steps", "5", "--format", "text"),
    ):
        code, _, _ = run_cli(capsys, *argv)
        assert code == 1, argv

    # out-of-domain grid is an evaluation error, not a usage error
    code, _, err = run_cli(capsys, "table", "--fn", "sin", "--p", "2",
                           "--q", "2", "--from", "0", "--to", "2.0",
                           "--steps", "5")
    assert code == 2


def test_verify_cli_fixed_example_schema(capsys):
    code, out, _ = run_cli(capsys, "verify", "--target", "ineq-1.1",
                           "--p", "2", "--q", "2", "--r", "0.25",
                           "--s", "0.81", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert list(obj) == ["target", "p", "q", "samples", "seed", "tol",
                         "sampling_interval", "min_margin", "violations",
                         "verdict"]
    assert obj["samples"] == 1
    assert obj["verdict"] == "verified"
    oracle = math.sin(0.45) - math.sqrt(math.sin(0.25) * math.sin(0.81))
    assert obj["min_margin"] == pytest.approx(oracle, abs=1e-6)


def test_verify_cli_equal_points_give_exact_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--target", "ineq-1.1",
                           "--p", "2", "--q", "3", "--r", "0.6", "--s", "0.6",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["min_margin"] == 0.0


def test_verify_cli_corollary_forces_q(capsys):
    code, out, err = run_cli(capsys, "verify", "--target", "corollary-p",
                             "--p", "2.5", "--q", "3", "--samples", "200",
                             "--format", "json")
    assert code == 0
    assert "forces q = p" in err
    assert json.loads(out)["q"] == 2.5

    # without --q the other targets are a usage error, corollary-p is fine
    code, _, _ = run_cli(capsys, "verify", "--target", "corollary-p",
                         "--p", "2.5", "--samples", "100")
    assert code == 0
    code, _, _ = run_cli(capsys, "verify", "--target", "gc-sin", "--p", "2.5",
                         "--samples", "100")
    assert code == 1


def test_verify_cli_fixed_point_flags(capsys):
    code, _, _ = run_cli(capsys, "verify", "--target", "gc-sin", "--p", "2",
                         "--q", "2", "--r", "0.5")
    assert code == 1
    code, _, _ = run_cli(capsys, "verify", "--target", "gc-sin", "--p", "2",
                         "--q", "2", "--lam", "0.3")
    assert code == 1
    # fixed point outside the sampling interval is a domain error
    code, _, _ = run_cli(capsys, "verify", "--target", "ineq-1.2", "--p", "2",
                         "--q", "4", "--r", "1.5", "--s", "0.5")
    assert code == 2


def test_verify_cli_negative_tol_flags_violations(capsys):
    # tol < 0 demands margin >= |tol| everywhere, so an exact-zero margin
    # at r = s is reported as a violation; handy for exercising exit 3
    code, out, _ = run_cli(capsys, "verify", "--target", "ineq-1.1",
                           "--p", "2", "--q", "2", "--r", "0.4", "--s", "0.4",
                           "--tol", "-0.5", "--format", "json")
    assert code == 3
    obj = json.loads(out)
    assert obj["verdict"] == "violated"
    assert len(obj["violations"]) == 1
    row = obj["violations"][0]
    assert len(row) == 6
    assert row[5] == 0.0  # the margin itself was exactly zero


def test_verify_cli_report_rows_are_reproducible(capsys):
    code, out, _ = run_cli(capsys, "verify", "--target", "gc-sin",
                           "--p", "2", "--q", "3", "--samples", "150",
                           "--seed", "9", "--tol", "-10", "--format", "json")
    assert code == 3
    obj = json.loads(out)
    assert len(obj["violations"]) == 150
    params = core.validate(2.0, 3.0)
    for r, s, lam, lhs, rhs, margin in obj["violations"][:10]:
        assert margin == pytest.approx(lhs - rhs, abs=1e-15)
        g = math.sqrt(r * s) if lam == 0.5 else r ** lam * s ** (1.0 - lam)
        assert core.sin_pq(params, g).value == pytest.approx(lhs, rel=5e-12)
        re_rhs = (core.sin_pq(params, r).value ** lam
                  * core.sin_pq(params, s).value ** (1.0 - lam))
        assert re_rhs == pytest.approx(rhs, rel=5e-12)


def test_verify_cli_hyperbolic_margin_orientation(capsys):
    code, out, _ = run_cli(capsys, "verify", "--target", "gc-sinh",
                           "--p", "2", "--q", "4", "--samples", "100",
                           "--seed", "3", "--tol", "-10", "--format", "json")
    assert code == 3
    for r, s, lam, lhs, rhs, margin in json.loads(out)["violations"][:10]:
        assert margin == pytest.approx(rhs - lhs, abs=1e-15)


def test_verify_cli_byte_identical_for_fixed_seed(capsys):
    argv = ("verify", "--target", "gc-sinh", "--p", "3", "--q", "5",
            "--samples", "300", "--seed", "42", "--format", "json")
    _, out1, _ = run_cli(capsys, *argv)
    _, out2, _ = run_cli(capsys, *argv)
    assert out1 == out2


def test_verify_cli_inconclusive_exit_2(capsys, monkeypatch):
    def boom(*a, **k):
        raise NonConvergence("forced for the test")
    monkeypatch.setattr(core, "sin_pq_many", boom)
    code, out, err = run_cli(capsys, "verify", "--target", "gc-sin",
                             "--p", "2", "--q", "2", "--samples", "10")
    assert code == 2
    assert "inconclusive" in out + err


def test_env_default_tol_and_precedence(capsys, monkeypatch):
    monkeypatch.setenv("PQTRIG_DEFAULT_TOL", "not-a-number")
    code, _, err = run_cli(capsys, "eval", "--fn", "sin", "--p", "2",
                           "--q", "2", "--x", "0.5")
    assert code == 1 and "PQTRIG_DEFAULT_TOL" in err
    # an explicit --tol never consults the environment
    code, _, _ = run_cli(capsys, "eval", "--fn", "sin", "--p", "2",
                         "--q", "2", "--x", "0.5", "--tol", "1e-10")
    assert code == 0
    monkeypatch.setenv("PQTRIG_DEFAULT_TOL", "1e-6")
    code, _, _ = run_cli(capsys, "eval", "--fn", "sin", "--p", "2",
                         "--q", "2", "--x", "0.5")
    assert code == 0


def test_cli_subprocess_numpy_backend():
    out = subprocess.run(
        [sys.executable, "-m", "pqtrig.cli", "eval", "--fn", "sin",
         "--p", "2", "--q", "2", "--x", repr(math.pi / 6.0),
         "--format", "json"],
        capture_output=True, text=True, timeout=120,
        env={"PATH": "/usr/bin:/bin", "PQTRIG_BACKEND": "numpy"})
    assert out.returncode == 0, out.stderr
    assert json.loads(out.stdout)["value"] == pytest.approx(0.5, abs=1e-12)
