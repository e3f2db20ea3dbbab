"""Backend switch for the summation kernels.

Numba is used when importable unless ``THETASUM_DISABLE_NUMBA`` is set to a
truthy value, in which case the vectorized numpy kernels run instead.
"""

import os

DISABLE_ENV = "THETASUM_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def numba_requested():
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in {"1", "true", "yes", "on"}


HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"

JIT_OPTIONS = {
    "nopython": True,
    "nogil": True,
    "cache": True,
    # fastmath would let LLVM reassociate the compensated sums
    "fastmath": False,
}


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged."""
    if not HAVE_NUMBA:
        return func
    return numba.jit(**JIT_OPTIONS)(func)
