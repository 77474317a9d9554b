"""Kernel dispatch.

The backend is fixed at import time: the numba kernels are used when numba
imports cleanly and EPPERTURB_DISABLE_NUMBA is unset, otherwise the numpy
fallback.  EPPERTURB_THREADS caps numba's parallel thread count.
"""

import numpy as np

from . import _backend
from . import _kernels_numpy

if _backend.numba_disabled():
    _impl = _kernels_numpy
else:
    try:
        from . import _kernels_numba as _impl
    except ImportError:  # pragma: no cover - exercised only without numba
        _impl = _kernels_numpy

if _impl.BACKEND == "numba":
    import numba

    _cap = _backend.thread_cap()
    if _cap is not None:
        numba.set_num_threads(min(_cap, numba.config.NUMBA_NUM_THREADS))

BACKEND = _impl.BACKEND


def aberth(coeffs, z0, max_iter=800, tol=5e-15):
    """Run the simultaneous root iteration; returns (roots, iterations, converged)."""
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.array(z0, dtype=np.complex128)
    iters, done = _impl.aberth(c, z, max_iter, tol)
    return z, iters, done


def smin_grid(H, zs):
    """Smallest singular value of (z I - H) for every z in zs."""
    Hc = np.ascontiguousarray(H, dtype=np.complex128)
    zc = np.ascontiguousarray(zs, dtype=np.complex128)
    return _impl.smin_grid(Hc, zc)


def eigvals_grid(mats):
    """Unsorted eigenvalues of each matrix in a (npts, n, n) stack."""
    stack = np.ascontiguousarray(mats, dtype=np.complex128)
    return _impl.eigvals_grid(stack)
