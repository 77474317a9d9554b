"""Numba-compiled hot kernels: root iteration and dense spectral grids."""

import numpy as np
from numba import njit, prange

BACKEND = "numba"


@njit(cache=True)
def aberth(coeffs, z, max_iter, tol):
    """Gauss-Seidel Aberth-Ehrlich sweep; see _kernels_numpy.aberth for the contract."""
    n = coeffs.shape[0] - 1
    for it in range(max_iter):
        done = True
        for k in range(n):
            zk = z[k]
            p = coeffs[n]
            dp = 0.0 + 0.0j
            for j in range(n - 1, -1, -1):
                dp = dp * zk + p
                p = p * zk + coeffs[j]
            if p == 0:
                continue
            if dp == 0:
                z[k] = zk * (1 + 1e-6) + 1e-6
                done = False
                continue
            nk = p / dp
            s = 0.0 + 0.0j
            for j in range(n):
                if j != k and z[j] != zk:
                    s += 1.0 / (zk - z[j])
            denom = 1.0 - nk * s
            if denom == 0:
                w = nk
            else:
                w = nk / denom
            z[k] = zk - w
            if abs(w) > tol * max(1.0, abs(z[k])):
                done = False
        if done:
            return it + 1, True
    return max_iter, False


@njit(cache=True, parallel=True)
def smin_grid(H, zs):
    npts = zs.shape[0]
    n = H.shape[0]
    out = np.empty(npts)
    for i in prange(npts):
        shifted = zs[i] * np.eye(n, dtype=np.complex128) - H
        out[i] = np.linalg.svd(shifted)[1][-1]
    return out


@njit(cache=True, parallel=True)
def eigvals_grid(mats):
    npts = mats.shape[0]
    n = mats.shape[1]
    out = np.empty((npts, n), dtype=np.complex128)
    for i in prange(npts):
        out[i] = np.linalg.eigvals(mats[i].copy())
    return out
