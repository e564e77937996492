"""Backend selection for the hot kernels.

PQTRIG_BACKEND chooses the implementation: "numba" (default) or "numpy".
The numba twin is imported lazily so a numpy-only run never pays the
compiler import; if numba is missing the numpy twin is used with a warning.
"""

from __future__ import annotations

import os
import warnings

from .errors import DomainError

_VALID = ("numba", "numpy")
_active_name: str | None = None
_active_mod = None


def load_backend(name: str | None = None):
    """Return the kernel module for `name` (or the PQTRIG_BACKEND default)."""
    global _active_name, _active_mod
    if name is None:
        name = os.environ.get("PQTRIG_BACKEND", "numba")
    if name not in _VALID:
        raise DomainError(f"unknown backend {name!r}; expected one of {_VALID}")
    if name == _active_name:
        return _active_mod
    if name == "numba":
        try:
            from . import _kernels_numba as mod
        except ImportError:
            warnings.warn("numba unavailable; falling back to numpy kernels",
                          RuntimeWarning, stacklevel=2)
            from . import _kernels_numpy as mod
            name = "numpy"
    else:
        from . import _kernels_numpy as mod
    _active_name = name
    _active_mod = mod
    return mod


def active() -> str:
    """Name of the backend currently loaded (loading the default if none)."""
    if _active_name is None:
        load_backend()
    assert _active_name is not None
    return _active_name


def use(name: str):
    """Force a backend by name, bypassing the environment variable."""
    return load_backend(name)
