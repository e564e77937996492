import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(scope="session")
def backend_names():
    """Both kernel backends if numba imports, else numpy alone."""
    names = ["numpy"]
    try:
        import numba  # noqa: F401
        names.append("numba")
    except ImportError:
        pass
    return names


@pytest.fixture(autouse=True)
def _default_backend():
    """Keep each test hermetic against backend switches made by neighbours."""
    from pqtrig import kernels
    yield
    kernels.use(os.environ.get("PQTRIG_BACKEND", "numba"))
