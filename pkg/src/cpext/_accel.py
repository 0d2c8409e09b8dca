"""Backend switch for the compiled kernels.

Set ``CPEXT_BACKEND=numpy`` to run every kernel through its pure numpy/Python
path instead of numba.  The flag is read once at import time.
"""

import os

BACKEND = os.environ.get("CPEXT_BACKEND", "numba").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba ships with the sandbox
    numba = None

USE_NUMBA = BACKEND != "numpy" and numba is not None


def njit(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it untouched."""
    if USE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
