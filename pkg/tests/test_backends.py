"""The numba and numpy kernel twins must be interchangeable."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from pqtrig import kernels
from pqtrig.errors import DomainError

REL_TOL = 1e-12

GRID = [(1.2, 1.2), (2.0, 2.0), (2.0, 4.0), (3.7, 1.5),
        (8.0, 8.0), (1.06, 9.5), (2.0, 200.0)]


def _twins(backend_names):
    mods = [kernels.use(n) for n in backend_names]
    if len(mods) < 2:
        pytest.skip("only one backend available")
    return mods


def test_use_returns_module_and_active_reports_name(backend_names):
    for name in backend_names:
        mod = kernels.use(name)
        assert mod.__name__.endswith("_kernels_" + name)
        assert kernels.active() == name


def test_unknown_backend_rejected():
    with pytest.raises(DomainError):
        kernels.use("fortran")
    with pytest.raises(DomainError):
        kernels.load_backend("Numba")


def test_env_variable_selects_default(monkeypatch):
    monkeypatch.setenv("PQTRIG_BACKEND", "numpy")
    assert kernels.load_backend().__name__.endswith("_kernels_numpy")
    assert kernels.active() == "numpy"


def test_env_selection_in_fresh_interpreter():
    out = subprocess.run(
        [sys.executable, "-c",
         "from pqtrig import kernels; print(kernels.active())"],
        env={"PATH": os.environ.get("PATH", "/usr/bin:/bin"),
             "PQTRIG_BACKEND": "numpy"},
        capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "numpy"


@pytest.mark.parametrize("p,q", GRID)
def test_direct_quadrature_twins_agree(backend_names, p, q):
    a, b = _twins(backend_names)
    x = np.linspace(0.01, 0.99, 23)
    for fn in ("arcsin_batch", "arcsinh_batch"):
        va, ea, _, sa = getattr(a, fn)(x, p, q, REL_TOL)
        vb, eb, _, sb = getattr(b, fn)(x, p, q, REL_TOL)
        assert np.array_equal(np.asarray(sa), np.asarray(sb))
        assert not np.any(np.asarray(sa))
        scale = np.maximum(np.abs(va), 1e-300)
        assert np.max(np.abs(va - vb) / scale) < 1e-11
        assert np.all(np.asarray(ea) < 1e-10 * scale + 1e-15)
        assert np.all(np.asarray(eb) < 1e-10 * scale + 1e-15)


@pytest.mark.parametrize("p,q", GRID)
def test_inversion_twins_agree(backend_names, p, q):
    a, b = _twins(backend_names)
    ph = float(np.asarray(a.arcsin_batch(np.array([1.0]), p, q, REL_TOL)[0])[0])
    y = np.linspace(0.02, 0.98, 17) * ph
    va, _, _, sa = a.sin_batch(y, p, q, REL_TOL, ph)
    vb, _, _, sb = b.sin_batch(y, p, q, REL_TOL, ph)
    assert np.array_equal(np.asarray(sa), np.asarray(sb))
    assert not np.any(np.asarray(sa))
    assert np.max(np.abs(va - vb) / np.abs(va)) < 1e-11

    if q > p:
        top = 0.9 * a.mstar_quad(p, q, REL_TOL)[0]
    else:
        top = 3.0
    y = np.linspace(0.02, 1.0, 17) * top
    va, _, _, sa = a.sinh_batch(y, p, q, REL_TOL)
    vb, _, _, sb = b.sinh_batch(y, p, q, REL_TOL)
    assert np.array_equal(np.asarray(sa), np.asarray(sb))
    assert not np.any(np.asarray(sa))
    assert np.max(np.abs(va - vb) / np.abs(va)) < 1e-11


def test_mstar_twins_agree(backend_names):
    a, b = _twins(backend_names)
    # includes a near-degenerate gap q - p and a very large q
    for p, q in [(2.0, 4.0), (1.2, 8.0), (3.0, 3.5), (2.0, 200.0),
                 (2.0, 2000.0), (1.0001, 1.001)]:
        va, ea, _, sa = a.mstar_quad(p, q, REL_TOL)
        vb, eb, _, sb = b.mstar_quad(p, q, REL_TOL)
        assert sa == 0 and sb == 0
        assert abs(va - vb) < 1e-12 * abs(va)
        assert ea < 1e-10 * va and eb < 1e-10 * va


def test_extreme_q_inversion_round_trip(backend_names):
    # q = 200 pushes the integrand corner to within 1/q of the endpoint;
    # both twins must still invert each other's forward values
    p, q = 2.0, 200.0
    for mod in _twins(backend_names):
        x = np.linspace(0.05, 0.95, 7)
        ph = float(np.asarray(mod.arcsin_batch(np.array([1.0]), p, q, REL_TOL)[0])[0])
        ys = np.asarray(mod.arcsin_batch(x, p, q, REL_TOL)[0])
        back, _, _, st = mod.sin_batch(ys, p, q, REL_TOL, ph)
        assert not np.any(np.asarray(st))
        assert np.max(np.abs(np.asarray(back) - x)) < 1e-11
