"""Environment-driven selection of the kernel backend.

EPPERTURB_DISABLE_NUMBA forces the pure-numpy fallback kernels;
EPPERTURB_THREADS caps the thread count used by the numba backend.
"""

import os

DISABLE_ENV = "EPPERTURB_DISABLE_NUMBA"
THREADS_ENV = "EPPERTURB_THREADS"

_TRUTHY = {"1", "true", "yes", "on"}


def numba_disabled(environ=None):
    """True when the environment requests the pure-numpy kernel path."""
    env = os.environ if environ is None else environ
    return env.get(DISABLE_ENV, "").strip().lower() in _TRUTHY


def thread_cap(environ=None):
    """Requested parallel thread cap, or None when unset/invalid."""
    env = os.environ if environ is None else environ
    raw = env.get(THREADS_ENV, "").strip()
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        return None
    return n if n >= 1 else None
