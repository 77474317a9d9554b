"""Singular perturbation engine for a perturbed K x K Jordan block.

With the state normalized to psi_1 = 1 and components y_j = psi_{j+1}
(plus an artificial y_K = 0), the eigenproblem (S + W) psi = eps psi
becomes the linear system (L(eps) + Z) y = r where L is unit lower
bidiagonal with -eps below the diagonal, Z is W with its first column
dropped and a zero column appended, and r = (eps - W_11, -W_21, ...,
-W_K1).  The last component y_K(eps) is the secular function whose zeros
are the energy corrections; near the exceptional point they branch as
fractional powers of the perturbation scale lambda (generically
lambda**(1/K) when W_K1 != 0), which the Newton-polygon analysis of the
secular polynomial extracts as leading-order roots with their
ramification indices.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import AllOrdersVanish, SingularSystem
from .jordan import jordan_block

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class PerturbedJordanProblem:
    """Block size K, perturbation W (K x K, entries O(lambda)), scale lambda, shift s."""

    K: int
    W: np.ndarray
    lam: float
    s: complex = 0.0

    def __post_init__(self):
        W = np.asarray(self.W)
        if W.shape != (self.K, self.K):
            raise ValueError(f"W must be {self.K}x{self.K}")
        if not self.lam > 0:
            raise ValueError("lambda must be positive")
        object.__setattr__(self, "W", W)

    @classmethod
    def from_matrix(cls, W, lam=None, s=0.0):
        """Build a problem from W alone, inferring lambda = max |W_ij| if unset."""
        W = np.asarray(W)
        if lam is None:
            lam = float(np.abs(W).max())
            if lam == 0:
                raise ValueError("cannot infer lambda from a zero perturbation")
        return cls(W.shape[0], W, float(lam), s)

    def scaled(self, factor):
        """Same perturbation direction at a rescaled strength."""
        return PerturbedJordanProblem(self.K, self.W * factor, self.lam * factor, self.s)


class LeadingRoot(NamedTuple):
    value: complex
    ramification: int


class RootClassification(NamedTuple):
    admissible: np.ndarray
    symmetry_breaking: np.ndarray


@dataclass(frozen=True)
class SecularData:
    """Secular polynomial, its exact roots, their reality partition, and wave functions."""

    polynomial: np.ndarray
    roots: np.ndarray
    admissible: np.ndarray
    symmetry_breaking: np.ndarray
    wavefns: list


def build_L(K, eps):
    """Unit lower bidiagonal frame matrix with -eps on the subdiagonal."""
    L = np.eye(K, dtype=np.result_type(float, type(eps)))
    for i in range(1, K):
        L[i, i - 1] = -eps
    return L


def build_Linv(K, eps):
    """Inverse of build_L: entry (i, j) = eps**(i-j) on and below the diagonal."""
    Linv = np.zeros((K, K), dtype=np.result_type(float, type(eps)))
    for i in range(K):
        for j in range(i + 1):
            Linv[i, j] = eps ** (i - j)
    return Linv


def shifted_Z(W):
    """Interaction matrix with the first column dropped and a zero column appended."""
    W = np.asarray(W)
    Z = np.zeros_like(W)
    Z[:, : W.shape[1] - 1] = W[:, 1:]
    return Z


def rhs_r(W, eps):
    """Right-hand side (eps - W_11, -W_21, ..., -W_K1)."""
    W = np.asarray(W)
    r = -W[:, 0].astype(np.result_type(W.dtype, type(eps)))
    r[0] += eps
    return r


def _frame_solve(problem, eps):
    M = build_L(problem.K, eps) + shifted_Z(problem.W)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv[-1] <= sv[0] * 64 * _EPS:
        raise SingularSystem("(L + Z) is singular at this energy")
    return np.linalg.solve(M, rhs_r(problem.W, eps))


def secular_value(problem, eps):
    """Secular function y_K(eps) from the exact frame solve (psi_1 = 1)."""
    return complex(_frame_solve(problem, eps)[-1])


def secular_polynomial(problem):
    """Degree-K polynomial in eps whose roots are the energy corrections.

    Computed as the characteristic polynomial of S_K(0) + W; its roots are
    the eigenvalue shifts of the perturbed block relative to s.
    """
    return numerics.char_poly(jordan_block(0.0, problem.K) + problem.W)


def wavefunction(problem, eps, order=None):
    """Component vector y at energy correction eps.

    order=None solves (L + Z) y = r exactly; order=k >= 1 sums the first k
    terms of the Neumann series y = (1 - Linv Z + ...) Linv r, with order=1
    the plain first-order hierarchy Linv r.  The full state is
    (1, y_1, ..., y_{K-1}); y_K is the secular residual.
    """
    if order is None or order == np.inf:
        return _frame_solve(problem, eps)
    if order < 1:
        raise ValueError("order must be >= 1 (or None for the exact solve)")
    Linv = build_Linv(problem.K, eps)
    Z = shifted_Z(problem.W)
    term = Linv @ rhs_r(problem.W, eps)
    y = term.copy()
    for _ in range(1, int(order)):
        term = -Linv @ (Z @ term)
        y = y + term
    return y


def _valuations(problem, floor_scale):
    """Integer lambda-orders of the secular coefficients from two-point sampling.

    Coefficients within roundoff of zero (relative to the compounding
    power of the matrix scale) are treated as structurally absent.
    """
    c1 = secular_polynomial(problem)
    c4 = secular_polynomial(problem.scaled(0.25))
    K = problem.K
    vals = [None] * (K + 1)
    vals[K] = 0
    for j in range(K):
        floor = 64 * _EPS * floor_scale ** (K - j)
        if abs(c1[j]) <= floor or abs(c4[j]) <= floor:
            continue
        vals[j] = max(0, round(math.log(abs(c1[j]) / abs(c4[j])) / math.log(4.0)))
    return c1, vals


def _lower_hull(points):
    """Lower convex hull of integer (j, v) points sorted by j."""
    hull = []
    for p in points:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def leading_order_roots(problem, tol=1e-10):
    """Leading-order Puiseux roots of the secular polynomial.

    Newton-polygon dominant balances of the coefficient lambda-orders yield,
    per hull segment of slope -p/q, its roots of size lambda**(p/q) with
    ramification index q; exact zero roots (structurally vanishing trailing
    coefficients) are reported with ramification 1.  Raises AllOrdersVanish
    when the polynomial is eps**K exactly.
    """
    scale = max(1.0, float(np.abs(problem.W).max()) + 1.0)
    coeffs, vals = _valuations(problem, scale)
    K = problem.K
    present = [j for j in range(K + 1) if vals[j] is not None]
    m0 = present[0]
    if m0 == K:
        raise AllOrdersVanish("secular polynomial is a pure power of eps")
    roots = [LeadingRoot(0.0 + 0.0j, 1)] * m0
    hull = _lower_hull([(j, vals[j]) for j in present])
    for (j1, v1), (j2, v2) in zip(hull[:-1], hull[1:]):
        mu = Fraction(v1 - v2, j2 - j1)
        segment = np.zeros(j2 + 1, dtype=np.complex128)
        for j in present:
            if j1 <= j <= j2 and Fraction(v1 - vals[j], 1) == mu * (j - j1):
                segment[j] = coeffs[j]
        seg_roots = numerics.poly_roots(segment, tol=tol)
        seg_roots = seg_roots[np.abs(seg_roots) > 0]
        roots.extend(LeadingRoot(complex(z), mu.denominator) for z in seg_roots)
    return roots


def classify_roots(roots, scale, tol=1e-8):
    """Partition roots into admissible (real) and symmetry-breaking (complex).

    A root is admissible when |Im eps| <= tol * max(|eps|, scale); pass
    scale = lambda**(1/K) so the reality test tracks the K-th-root noise
    floor of a K-fold degeneracy.
    """
    roots = np.asarray(roots, dtype=np.complex128).ravel()
    mask = np.abs(roots.imag) <= tol * np.maximum(np.abs(roots), scale)
    return RootClassification(roots[mask], roots[~mask])


def analyze(problem, tol=1e-10):
    """Exact secular solve: polynomial, roots, reality partition, wave functions."""
    poly = secular_polynomial(problem)
    roots = numerics.poly_roots(poly, tol=tol)
    parts = classify_roots(roots, problem.lam ** (1.0 / problem.K))
    wavefns = []
    for eps in roots:
        try:
            wavefns.append(wavefunction(problem, complex(eps)))
        except SingularSystem:
            wavefns.append(None)
    return SecularData(poly, roots, parts.admissible, parts.symmetry_breaking, wavefns)
