"""Jordan chains, transition matrices and transformed perturbations.

For a matrix H with a single K-fold defective eigenvalue s, the transition
matrix Q collects the Jordan chain (H - sI) q_1 = 0, (H - sI) q_{j+1} = q_j
so that H Q = Q S with S the K x K Jordan block.  Moving a nearby H(t) into
that frame, W = Q^{-1} H(t) Q - S, exposes the perturbation the singular
expansion machinery works on.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ChainBreakdown,
    DegenerateGammas,
    NotSingleBlock,
    SingularQ,
    UnsupportedK,
)

_SQRT2 = np.sqrt(2.0)
_SQRT3 = np.sqrt(3.0)
_SQRT6 = np.sqrt(6.0)


@dataclass(frozen=True)
class JordanForm:
    """Eigenvalue s, block size K, chain columns Q and Jordan block S (H Q = Q S)."""

    eigenvalue: complex
    K: int
    Q: np.ndarray
    S: np.ndarray


def jordan_block(s, K):
    """K x K Jordan block: s on the diagonal, 1 on the superdiagonal."""
    sval = complex(s)
    S = np.eye(K, k=1, dtype=np.float64 if sval.imag == 0 else np.complex128)
    np.fill_diagonal(S, sval.real if sval.imag == 0 else sval)
    return S


def fixture_Q(K):
    """Stored transition matrices of the benchmark exceptional-point family.

    Column j carries the chain vector q_j; entries below the anti-diagonal
    vanish and the leading column is proportional to the alternating-sign
    square-root-binomial kernel vector.
    """
    if K == 2:
        return np.array([[1.0, 1.0], [-1.0, 0.0]])
    if K == 3:
        return np.array(
            [
                [2.0, 2.0, 1.0],
                [-2.0 * _SQRT2, -_SQRT2, 0.0],
                [2.0, 0.0, 0.0],
            ]
        )
    if K == 4:
        return np.array(
            [
                [6.0, 6.0, 3.0, 1.0],
                [-6.0 * _SQRT3, -4.0 * _SQRT3, -_SQRT3, 0.0],
                [6.0 * _SQRT3, 2.0 * _SQRT3, 0.0, 0.0],
                [-6.0, 0.0, 0.0, 0.0],
            ]
        )
    if K == 5:
        return np.array(
            [
                [24.0, 24.0, 12.0, 4.0, 1.0],
                [-48.0, -36.0, -12.0, -2.0, 0.0],
                [24.0 * _SQRT6, 12.0 * _SQRT6, 2.0 * _SQRT6, 0.0, 0.0],
                [-48.0, -12.0, 0.0, 0.0, 0.0],
                [24.0, 0.0, 0.0, 0.0, 0.0],
            ]
        )
    raise UnsupportedK(f"no stored transition matrix for K={K}")


def _rank(M, threshold):
    sv = np.linalg.svd(M, compute_uv=False)
    return int(np.count_nonzero(sv > threshold))


def jordan_chain(H, s, K, tol=1e-10):
    """Compute the Jordan chain of the K-fold eigenvalue s of H.

    The rank profile rank((H - sI)^k) = N - k, k = 1..K, is verified first
    (NotSingleBlock otherwise).  Each chain solve is the minimum-norm
    least-squares solution; its kernel freedom is then fixed by zeroing the
    trailing component whenever the kernel vector allows it, which is the
    convention of the stored fixtures.  q_1 is unit length with its first
    significant component rotated to the positive real axis.
    """
    H = np.asarray(H)
    sval = complex(s)
    if np.iscomplexobj(H) or sval.imag != 0:
        A = H.astype(np.complex128) - sval * np.eye(H.shape[0])
    else:
        A = H.astype(np.float64) - sval.real * np.eye(H.shape[0])
    N = A.shape[0]
    if not 1 <= K <= N:
        raise ValueError("K must lie in 1..N")
    smax = max(1.0, float(np.linalg.svd(A, compute_uv=False)[0]))
    power = np.eye(N, dtype=A.dtype)
    for k in range(1, K + 1):
        power = power @ A
        if _rank(power, tol * smax**k) != N - k:
            raise NotSingleBlock(f"rank((H-sI)^{k}) != N-{k}")
    if K < N and _rank(power @ A, tol * smax ** (K + 1)) != N - K:
        raise NotSingleBlock(f"nilpotency index exceeds K={K}")

    _, _, vh = np.linalg.svd(A)
    q1 = vh[-1].conj()
    anchors = np.nonzero(np.abs(q1) > 1e-8)[0]
    q1 = q1 * (np.abs(q1[anchors[0]]) / q1[anchors[0]])
    if not np.iscomplexobj(A):
        q1 = q1.real
    tail_ok = abs(q1[-1]) > 1e-8

    cols = [q1]
    for _ in range(2, K + 1):
        qj = np.linalg.lstsq(A, cols[-1], rcond=None)[0]
        if np.linalg.norm(A @ qj - cols[-1]) > tol * smax * np.linalg.norm(cols[-1]):
            raise ChainBreakdown("chain equation inconsistent")
        if tail_ok:
            qj = qj - (qj[-1] / q1[-1]) * q1
        cols.append(qj)
    Q = np.column_stack(cols)
    S = jordan_block(sval, K)
    if np.iscomplexobj(A):
        S = S.astype(np.complex128)
    if np.abs(H @ Q - Q @ S).max() > tol * smax * max(1.0, np.abs(Q).max()):
        raise ChainBreakdown("H Q != Q S at tolerance")
    return JordanForm(sval, K, Q, S)


def extract_perturbation(H, jf, tol=1e-10):
    """Perturbation in the Jordan frame: W = Q^{-1} H Q - S."""
    Q = np.asarray(jf.Q)
    if Q.shape[0] != Q.shape[1]:
        raise SingularQ("Q must be square to change frame")
    sv = np.linalg.svd(Q, compute_uv=False)
    if sv[-1] == 0 or sv[0] / sv[-1] > 1.0 / tol:
        raise SingularQ(f"cond(Q) exceeds {1.0 / tol:.3g}")
    W = np.linalg.solve(Q, np.asarray(H) @ Q) - jf.S
    return W


def cs_fixture(gamma1, gamma2):
    """Complex-symmetric two-mode loss fixture (H0, Q, S).

    H0 has the two loss rates on its imaginary diagonal; Q brings it to the
    Jordan block S with the degenerate eigenvalue -i (gamma1 + gamma2) / 4.
    """
    g1, g2 = float(gamma1), float(gamma2)
    if g1 == g2:
        raise DegenerateGammas("gamma1 == gamma2 makes Q singular")
    H0 = 0.25 * np.array(
        [[-2j * g1, g1 - g2], [g1 - g2, -2j * g2]], dtype=np.complex128
    )
    Q = 0.25 * np.array(
        [[1j * (g2 - g1), 4.0], [g1 - g2, 0.0]], dtype=np.complex128
    )
    S = jordan_block(-0.25j * (g1 + g2), 2)
    return H0, Q, S
