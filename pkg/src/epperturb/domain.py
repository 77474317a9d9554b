"""Physical-domain scanning, boundary location, metric construction, pseudospectra.

A parameter point is physical when the spectrum is entirely real and
simple.  Because eigenvalue collisions are detected with noise that grows
like the square root of the working tolerance near a defective point, the
degeneracy threshold is sqrt(tol) * scale and the near-boundary band is
ten times that.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import hamiltonians, kernels, numerics
from .errors import NoSignChange, NotPhysical

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpectrumResult:
    """Sorted eigenvalues with reality flags and the real-line gap structure."""

    eigenvalues: np.ndarray
    all_real: bool
    min_gap: float
    reality_tol: float


@dataclass(frozen=True)
class DomainScan:
    """Grid axes with per-point labels (physical / broken / near_boundary)."""

    axes: tuple
    labels: np.ndarray
    min_gap: np.ndarray
    max_imag: np.ndarray


@dataclass(frozen=True)
class MetricResult:
    """Metric candidate Theta with its intertwining residual and spectrum range."""

    theta: np.ndarray
    intertwine_residual: float
    min_eigenvalue: float
    condition: float


@dataclass(frozen=True)
class PseudospectrumGrid:
    """Grid of smallest singular values of (z I - H) over a complex window."""

    re: np.ndarray
    im: np.ndarray
    smin: np.ndarray
    levels: dict


def _classify(eigs, tol):
    """Label one spectrum; returns (label, all_real, min_gap, max_imag, rtol).

    Reality is assessed at rtol = sqrt(tol) * scale, the collision-noise
    floor of eigenvalues near a defective point; the near-boundary band is
    ten times that.
    """
    scale = max(1.0, float(np.abs(eigs).max()))
    rtol = math.sqrt(tol) * scale
    real_mask = np.abs(eigs.imag) <= rtol
    all_real = bool(real_mask.all())
    reals = np.sort(eigs.real[real_mask])
    min_gap = float(np.diff(reals).min()) if reals.size >= 2 else math.inf
    max_imag = float(np.abs(eigs.imag).max())
    band = 10.0 * rtol
    if all_real and min_gap > band:
        label = "physical"
    elif not all_real and max_imag > band:
        label = "broken"
    else:
        label = "near_boundary"
    return label, all_real, min_gap, max_imag, rtol


def spectrum(H, tol=DEFAULT_TOL):
    """Sorted spectrum of H with reality flags at sqrt(tol) * scale."""
    eigs, _, _ = numerics.eigenpairs(H, tol)
    _, all_real, min_gap, _, rtol = _classify(eigs, tol)
    return SpectrumResult(eigs, all_real, min_gap, rtol)


def is_physical(H, tol=DEFAULT_TOL):
    """True when the spectrum is entirely real and non-degenerate.

    Reality and degeneracy are both tested at sqrt(tol) * scale: eigenvalue
    noise near a defective point grows like a fractional root of roundoff,
    so a stricter threshold would misclassify physical points arbitrarily
    close to the boundary.
    """
    eigs, _, _ = numerics.eigenpairs(H, tol)
    _, all_real, min_gap, _, rtol = _classify(eigs, tol)
    return all_real and min_gap > rtol


def _axis_index(N, name):
    """Coupling index (0-based) for an axis name; couplings are outermost-first."""
    J = N // 2
    aliases = {"z": 1, "a": J, "b": J - 1}
    if name in aliases:
        idx = aliases[name]
    elif name.startswith("g") and name[1:].isdigit():
        idx = int(name[1:])
    else:
        raise ValueError(f"unknown axis {name!r}")
    if not 1 <= idx <= J:
        raise ValueError(f"axis {name!r} out of range for N={N}")
    return idx - 1


def _matrix_at(N, names, values, base_g, G, s):
    if names == ("t",):
        params = hamiltonians.PathParams(values[0], G)
        return hamiltonians.build_on_path(N, params, s)
    g = np.array(base_g, dtype=float)
    for name, value in zip(names, values):
        g[_axis_index(N, name)] = value
    return hamiltonians.build(hamiltonians.HamiltonianSpec(N, tuple(g), s))


def scan(N, axes, tol=DEFAULT_TOL, base_g=None, G=None, s=0.0):
    """Classify every point of a 1- or 2-axis parameter grid.

    Each axis is (name, lo, hi, count) where name is "t" or a coupling
    ("a", "b", "z", "g1".."gJ"); unspecified couplings sit at their
    exceptional-point values (or base_g).  A "t" axis cannot be mixed with
    coupling axes.
    """
    if not 1 <= len(axes) <= 2:
        raise ValueError("scan supports 1 or 2 axes")
    names = tuple(a[0] for a in axes)
    if "t" in names and len(names) > 1:
        raise ValueError("the t axis cannot be combined with coupling axes")
    grids = tuple(np.linspace(float(a[1]), float(a[2]), int(a[3])) for a in axes)
    if base_g is None:
        base_g = hamiltonians.ep_couplings(N)
    if len(grids) == 1:
        points = grids[0][:, None]
    else:
        g0, g1 = np.meshgrid(grids[0], grids[1], indexing="ij")
        points = np.column_stack([g0.ravel(), g1.ravel()])
    mats = np.stack(
        [_matrix_at(N, names, pt, base_g, G, s) for pt in points]
    ).astype(np.complex128)
    eig_rows = kernels.eigvals_grid(mats)
    labels, gaps, imags = [], [], []
    for row in eig_rows:
        label, _, min_gap, max_imag, _ = _classify(row, tol)
        labels.append(label)
        gaps.append(min_gap)
        imags.append(max_imag)
    shape = tuple(g.size for g in grids)
    return DomainScan(
        axes=tuple(zip(names, grids)),
        labels=np.array(labels).reshape(shape),
        min_gap=np.array(gaps).reshape(shape),
        max_imag=np.array(imags).reshape(shape),
    )


def boundary_locate(N, ray, tol=DEFAULT_TOL, base_g=None, G=None, s=0.0):
    """Bisect a scalar ray (name, start, stop) for the physicality boundary.

    Requires is_physical at the start and not at the stop (NoSignChange
    otherwise); bisection runs until the bracket is narrower than tol and
    the midpoint is returned.
    """
    name, lo, hi = ray[0], float(ray[1]), float(ray[2])
    if base_g is None:
        base_g = hamiltonians.ep_couplings(N)

    def physical(v):
        return is_physical(_matrix_at(N, (name,), (v,), base_g, G, s), tol)

    if not physical(lo):
        raise NoSignChange(f"ray start {name}={lo} is not physical")
    if physical(hi):
        raise NoSignChange(f"ray end {name}={hi} is still physical")
    while abs(hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if physical(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def metric(H, tol=DEFAULT_TOL, weights=None):
    """Candidate metric Theta = sum_n kappa_n u_n u_n^H from left eigenvectors.

    Requires a physical spectrum (NotPhysical otherwise).  Theta is
    hermitized exactly; the report carries the intertwining residual
    ||H^H Theta - Theta H|| / ||Theta|| and the eigenvalue range of Theta.
    The weights kappa surface the non-uniqueness of the construction and
    default to all ones.
    """
    H = np.asarray(H)
    if not is_physical(H, tol):
        raise NotPhysical("spectrum is not real and simple")
    _, _, vl = numerics.eigenpairs(H, tol)
    n = H.shape[0]
    kappa = np.ones(n) if weights is None else np.asarray(weights, dtype=float)
    if kappa.shape != (n,) or np.any(kappa <= 0):
        raise ValueError("weights must be a positive vector of length N")
    theta = (vl * kappa) @ vl.conj().T
    theta = 0.5 * (theta + theta.conj().T)
    residual = float(
        np.linalg.norm(H.conj().T @ theta - theta @ H, 2) / np.linalg.norm(theta, 2)
    )
    evals = np.linalg.eigvalsh(theta)
    condition = float(evals[-1] / evals[0]) if evals[0] > 0 else math.inf
    return MetricResult(theta, residual, float(evals[0]), condition)


def pseudospectrum(H, window, resolution, levels=None):
    """Grid of min singular values of (z I - H) over a complex rectangle.

    window = (re_min, re_max, im_min, im_max); resolution is the point
    count per axis (scalar or (n_re, n_im), each >= 2).  levels maps each
    requested epsilon to the boolean membership mask smin <= epsilon.
    """
    re_min, re_max, im_min, im_max = (float(v) for v in window)
    if np.isscalar(resolution):
        n_re = n_im = int(resolution)
    else:
        n_re, n_im = (int(v) for v in resolution)
    if n_re < 2 or n_im < 2:
        raise ValueError("resolution must be >= 2 per axis")
    re = np.linspace(re_min, re_max, n_re)
    im = np.linspace(im_min, im_max, n_im)
    zs = (re[None, :] + 1j * im[:, None]).ravel()
    smin = kernels.smin_grid(np.asarray(H), zs).reshape(n_im, n_re)
    masks = {float(eps): smin <= float(eps) for eps in (levels or [])}
    return PseudospectrumGrid(re, im, smin, masks)
