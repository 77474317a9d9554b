"""Benchmark family of real tridiagonal PT-symmetric matrices.

An N x N member has the descending diagonal N+1-2k (k = 1..N, plus an
optional shift s) and antisymmetric off-diagonals +/- g_{min(k, N-k)}
built from J = floor(N/2) couplings, outermost first (g_1 is the corner
coupling, g_J the central one).  At the exceptional-point couplings
g_n = sqrt(n (N - n)) the whole spectrum collapses to the shift and the
matrix becomes a single Jordan block in disguise.

The one-parameter path g_n(t) = g_n(0) sqrt(1 - xi_n(t)), with
xi_n(t) = t + t^2 + ... + t^(J-1) + G_n t^J, interpolates between that
strong-coupling limit (t = 0) and the diagonal weak-coupling limit
(xi = 1) while keeping the spectrum real.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BadCouplingLength, PathOutOfRange


@dataclass(frozen=True)
class HamiltonianSpec:
    """Dimension N >= 2, couplings g (length floor(N/2)), spectral shift s."""

    N: int
    g: tuple
    s: float = 0.0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be >= 2")
        object.__setattr__(self, "g", tuple(float(x) for x in np.atleast_1d(self.g)))
        if len(self.g) != self.N // 2:
            raise BadCouplingLength(
                f"expected {self.N // 2} couplings for N={self.N}, got {len(self.g)}"
            )


@dataclass(frozen=True)
class PathParams:
    """Path position t in [0, 1] and top-power weights G (None: defaults)."""

    t: float
    G: tuple | None = None

    def __post_init__(self):
        if self.G is not None:
            object.__setattr__(self, "G", tuple(float(x) for x in np.atleast_1d(self.G)))


def build(spec):
    """Assemble the real tridiagonal matrix for a HamiltonianSpec."""
    N, g, s = spec.N, spec.g, spec.s
    H = np.zeros((N, N))
    for k in range(1, N + 1):
        H[k - 1, k - 1] = N + 1 - 2 * k + s
    for k in range(1, N):
        gk = g[min(k, N - k) - 1]
        H[k - 1, k] = gk
        H[k, k - 1] = -gk
    return H


def ep_couplings(N):
    """Exceptional-point couplings g_n = sqrt(n (N - n)), n = 1..floor(N/2)."""
    if N < 2:
        raise ValueError("N must be >= 2")
    n = np.arange(1, N // 2 + 1, dtype=float)
    return np.sqrt(n * (N - n))


def default_weights(J):
    """Default top-power weights G_n = 2 - J.

    Reproduces the reference choices G_1 = 1 (J = 1) and G_n = 0 (J = 2)
    and keeps xi_n monotone onto [0, 1] at J = 3, so the whole t in [0, 1]
    path stays admissible for N <= 7.
    """
    return np.full(J, float(2 - J))


def xi_values(N, params):
    """Perturbation-strength profile xi_n(t) for each coupling."""
    J = N // 2
    t = float(params.t)
    G = default_weights(J) if params.G is None else np.asarray(params.G, dtype=float)
    if G.shape != (J,):
        raise BadCouplingLength(f"expected {J} weights for N={N}, got {G.size}")
    lead = sum(t**m for m in range(1, J))
    return lead + G * t**J


def path_couplings(N, params):
    """Couplings g_n(t) = g_n(0) sqrt(1 - xi_n(t)) on the interpolation path."""
    t = float(params.t)
    if not 0.0 <= t <= 1.0:
        raise PathOutOfRange(f"t={t} outside [0, 1]")
    xi = xi_values(N, params)
    if np.any(xi < 0.0) or np.any(xi > 1.0):
        raise PathOutOfRange(f"xi={xi} leaves [0, 1] at t={t}")
    return ep_couplings(N) * np.sqrt(1.0 - xi)


def build_on_path(N, params, s=0.0):
    """Matrix at path position t; t=0 is the exceptional point, xi=1 diagonal."""
    return build(HamiltonianSpec(N, tuple(path_couplings(N, params)), s))


def parity(N):
    """Alternating-sign parity matrix P = diag(+1, -1, ...); P H P = H^T."""
    return np.diag([(-1.0) ** k for k in range(N)])
