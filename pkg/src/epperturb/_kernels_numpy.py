"""Pure-numpy reference implementations of the hot kernels.

Used when numba is unavailable or disabled via EPPERTURB_DISABLE_NUMBA.
Contracts match _kernels_numba; the Aberth sweep here is Jacobi-style
(all estimates updated from the previous iterate) while the numba kernel
updates in place, so the two agree at the stopping tolerance, not bitwise.
"""

import numpy as np

BACKEND = "numpy"


def aberth(coeffs, z, max_iter, tol):
    """Aberth-Ehrlich simultaneous iteration on a monic polynomial.

    coeffs are ascending complex coefficients with coeffs[-1] == 1; z holds
    the root estimates and is updated in place.  Returns (iterations, done)
    where done means every correction fell below tol * max(1, |z_k|).
    """
    n = coeffs.shape[0] - 1
    for it in range(max_iter):
        p = np.full(n, coeffs[n], dtype=np.complex128)
        dp = np.zeros(n, dtype=np.complex128)
        for j in range(n - 1, -1, -1):
            dp = dp * z + p
            p = p * z + coeffs[j]
        stalled = (dp == 0) & (p != 0)
        if stalled.any():
            z[stalled] = z[stalled] * (1 + 1e-6) + 1e-6
            continue
        with np.errstate(invalid="ignore", divide="ignore"):
            nk = np.where(p == 0, 0.0, p / np.where(dp == 0, 1.0, dp))
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            coupling = np.where(diff == 0, 0.0, 1.0 / np.where(diff == 0, np.inf, diff))
        s = coupling.sum(axis=1)
        denom = 1.0 - nk * s
        w = np.where(denom == 0, nk, nk / np.where(denom == 0, 1.0, denom))
        z -= w
        if np.all(np.abs(w) <= tol * np.maximum(1.0, np.abs(z))):
            return it + 1, True
    return max_iter, False


def smin_grid(H, zs):
    """Smallest singular value of (z I - H) for every z in zs."""
    n = H.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    shifted = zs[:, None, None] * eye - H[None, :, :]
    return np.linalg.svd(shifted, compute_uv=False)[:, -1]


def eigvals_grid(mats):
    """Eigenvalues of each matrix in a (npts, n, n) complex stack, unsorted."""
    return np.linalg.eigvals(mats)
