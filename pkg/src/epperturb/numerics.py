"""Dense complex linear algebra and polynomial machinery.

Conventions: matrices are numpy arrays, polynomials are 1-D coefficient
arrays in ascending degree order with a nonzero leading coefficient after
normalization.  All tolerances are absolute on unit-scaled data unless noted.

The characteristic polynomial (Faddeev-LeVerrier) together with the Aberth
root finder forms the secular-equation route to spectra; `eigenpairs`
delegates to LAPACK and serves as the independent cross-check of that route.
"""

import numpy as np
import scipy.linalg

from . import kernels
from .errors import DimensionTooLarge, NonConvergence, SingularMatrix

DEFAULT_TOL = 1e-10
MAX_DIM = 64

_EPS = np.finfo(float).eps


def polyval(coeffs, z):
    """Evaluate an ascending-coefficient polynomial at z (scalar or array)."""
    return np.polynomial.polynomial.polyval(z, np.asarray(coeffs))


def solve_linear(A, b, tol=DEFAULT_TOL):
    """Solve A x = b for a square, well-conditioned A.

    Raises SingularMatrix when the condition number (from the full SVD,
    cheap at desk scale) exceeds 1/tol.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > 1.0 / tol:
        raise SingularMatrix(f"condition number exceeds {1.0 / tol:.3g}")
    return np.linalg.solve(A, b)


def char_poly(A):
    """Coefficients of det(x I - A), ascending, via Faddeev-LeVerrier.

    Exact integer coefficients are reproduced to roundoff for integer
    inputs; the result is monic by construction.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    n = A.shape[0]
    if n > MAX_DIM:
        raise DimensionTooLarge(f"dimension {n} exceeds {MAX_DIM}")
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    M = np.zeros_like(A)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        M = A @ M + coeffs[n - k + 1] * eye
        coeffs[n - k] = -np.trace(A @ M) / k
    return coeffs


def _initial_estimates(monic):
    """Fujiwara-style radius with an asymmetric angular offset."""
    n = monic.shape[0] - 1
    radius = 0.0
    for j in range(n):
        cj = abs(monic[j])
        if cj > 0:
            radius = max(radius, cj ** (1.0 / (n - j)))
    radius = 2.0 * radius if radius > 0 else 1.0
    k = np.arange(n)
    return radius * np.exp(1j * (2.0 * np.pi * k / n + 0.4))


def _cluster_roots(roots, tol):
    """Merge root clusters to multiple roots.

    Hypothesized multiplicities are tested ascending; a group whose total
    multiplicity reaches m is collapsed to its centroid when its members sit
    within the radius tol**(1/m), matching the m-th-root sensitivity of a
    multiple root to coefficient noise.
    """
    centers = [complex(z) for z in roots]
    mults = [1] * len(centers)
    for m in range(2, len(roots) + 1):
        radius = tol ** (1.0 / m)
        merged = True
        while merged:
            merged = False
            k = len(centers)
            # connected components of the proximity graph at this radius
            comp = list(range(k))

            def find(i):
                while comp[i] != i:
                    comp[i] = comp[comp[i]]
                    i = comp[i]
                return i

            for i in range(k):
                for j in range(i + 1, k):
                    if abs(centers[i] - centers[j]) <= radius:
                        comp[find(i)] = find(j)
            groups = {}
            for i in range(k):
                groups.setdefault(find(i), []).append(i)
            new_centers, new_mults = [], []
            for members in groups.values():
                total = sum(mults[i] for i in members)
                if len(members) > 1 and total >= m:
                    centroid = sum(centers[i] * mults[i] for i in members) / total
                    new_centers.append(centroid)
                    new_mults.append(total)
                    merged = True
                else:
                    for i in members:
                        new_centers.append(centers[i])
                        new_mults.append(mults[i])
            centers, mults = new_centers, new_mults
    out = []
    for c, m in zip(centers, mults):
        out.extend([c] * m)
    return np.array(out, dtype=np.complex128)


def poly_roots(p, tol=DEFAULT_TOL, max_iter=800):
    """All complex roots of p by simultaneous Aberth-Ehrlich iteration.

    Exact zero coefficients at the low end are deflated as zero roots.
    Multiple roots are reported by clustering (see _cluster_roots).  Raises
    NonConvergence when some returned root fails the backward-error test
    |p(root)| <= tol * sum_j |c_j| |root|^j (+ a roundoff floor).
    """
    c = np.asarray(p, dtype=np.complex128).ravel()
    while c.size > 1 and c[-1] == 0:
        c = c[:-1]
    if c.size < 2:
        raise ValueError("polynomial degree must be >= 1")
    n_zero = 0
    while c[n_zero] == 0:
        n_zero += 1
    work = c[n_zero:]
    roots = [0.0 + 0.0j] * n_zero
    if work.size > 1:
        monic = work / work[-1]
        z0 = _initial_estimates(monic)
        z, _, _ = kernels.aberth(monic, z0, max_iter=max_iter)
        roots.extend(z.tolist())
    roots = _cluster_roots(np.array(roots, dtype=np.complex128), tol)
    mags = np.abs(c)
    for z in roots:
        bound = tol * float(mags @ (abs(z) ** np.arange(c.size))) + 16 * _EPS * mags.max()
        if abs(polyval(c, z)) > bound:
            raise NonConvergence(f"residual {abs(polyval(c, z)):.3g} exceeds {bound:.3g}")
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def eigenpairs(A, tol=DEFAULT_TOL):
    """Eigen-decomposition with left vectors: A v = E v, u^H A = E u^H.

    Delegates to LAPACK; vectors come back unit-normalized in the columns
    of the returned arrays and eigenvalues sorted by (re, im).  Returns
    (eigenvalues, right_vectors, left_vectors).
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    try:
        w, vl, vr = scipy.linalg.eig(A, left=True, right=True)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NonConvergence(str(exc)) from exc
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    vr = vr[:, order] / np.linalg.norm(vr[:, order], axis=0)
    vl = vl[:, order] / np.linalg.norm(vl[:, order], axis=0)
    scale = max(1.0, np.linalg.norm(A, 2))
    res_r = np.linalg.norm(A @ vr - vr * w, axis=0).max()
    res_l = np.linalg.norm(A.conj().T @ vl - vl * w.conj(), axis=0).max()
    if max(res_r, res_l) > tol * scale:
        raise NonConvergence(f"eigenpair residual {max(res_r, res_l):.3g}")
    return w, vr, vl


def min_singular_value(A):
    """Smallest singular value of a square matrix."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    try:
        return float(np.linalg.svd(A, compute_uv=False)[-1])
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(str(exc)) from exc
