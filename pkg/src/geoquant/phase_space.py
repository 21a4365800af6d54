"""Linear phase space given by a bilinear symplectic potential.

A phase space ``L = R^{2n}`` carries the bracket ``[xi, tau] = xi^T T tau``
and the symplectic form ``omega = (T - T^T) / 2``. The bracket singles out
two Lagrangian subspaces: ``M`` (the right kernel of ``T``) and ``N`` (the
right kernel of ``T^T``). Configuration space is ``Q = L / M``; throughout
the package Q-vectors are length-``n`` arrays of coordinates in the frame
given by the columns of ``basisN`` (the identification ``N -> Q``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg as sla

from .errors import InadmissibleBracketError

RANK_RTOL = 1e-10
COND_MAX = 1e12


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


def null_space(A, rtol=RANK_RTOL):
    """Right kernel of ``A`` via SVD with a relative singular-value cutoff."""
    A = np.asarray(A, dtype=float)
    u, s, vh = np.linalg.svd(A)
    smax = s[0] if s.size else 0.0
    rank = int(np.sum(s > rtol * smax)) if smax > 0 else 0
    return vh[rank:].T.conj()


def canonical_basis(K):
    """Re-express the column span of ``K`` so the basis is the identity on
    a set of pivot rows (chosen by pivoted QR, then sorted).

    Makes the basis independent of SVD sign and rotation ambiguities.
    """
    if K.shape[1] == 0:
        return K
    _, _, piv = sla.qr(K.T, pivoting=True)
    rows = np.sort(piv[: K.shape[1]])
    return K @ np.linalg.inv(K[rows, :])


@dataclass(frozen=True, eq=False)
class PhaseSpace:
    """Phase space ``(L, [.,.], omega)`` with its canonical splitting.

    Build instances with :func:`build_phase_space` or
    :func:`bracket_from_splitting`, which validate the invariants.
    """

    dim: int
    T: np.ndarray
    W: np.ndarray
    basisM: np.ndarray
    basisN: np.ndarray

    @property
    def n(self):
        return self.dim // 2

    @cached_property
    def _frame_inverse(self):
        return np.linalg.inv(np.hstack([self.basisN, self.basisM]))

    @cached_property
    def quotient_matrix(self):
        """``n x 2n`` matrix of the quotient map ``q`` in the N-frame."""
        return _frozen(self._frame_inverse[: self.n])

    @cached_property
    def m_coords(self):
        """``n x 2n`` matrix extracting M-coordinates of ``p_M(xi)``."""
        return _frozen(self._frame_inverse[self.n :])

    @cached_property
    def proj_M(self):
        return _frozen(self.basisM @ self.m_coords)

    @cached_property
    def proj_N(self):
        return _frozen(self.basisN @ self.quotient_matrix)

    @cached_property
    def pairing(self):
        """Matrix of ``[m, n]`` for ``m = basisM a``, ``n = basisN b``: ``a^T P b``."""
        return _frozen(self.basisM.T @ self.T @ self.basisN)

    @cached_property
    def W_inv(self):
        return _frozen(np.linalg.inv(self.W))

    def bracket(self, xi, tau):
        return np.asarray(xi) @ self.T @ np.asarray(tau)

    def omega(self, xi, tau):
        return np.asarray(xi) @ self.W @ np.asarray(tau)

    def lift(self, phi):
        """The representative of ``phi in Q`` lying in N."""
        return np.asarray(phi) @ self.basisN.T

    def bracket_q(self, xi, phi):
        """``[xi, phi]`` with ``phi`` a Q-vector (well defined since [., M] = 0)."""
        return self.bracket(xi, self.lift(phi))


def build_phase_space(T):
    """Validate a bracket matrix and compute ``W``, ``M`` and ``N``."""
    T = np.array(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise InadmissibleBracketError(f"bracket matrix must be square, got shape {T.shape}")
    dim = T.shape[0]
    if dim == 0 or dim % 2:
        raise InadmissibleBracketError(f"phase space dimension must be even and positive, got {dim}")
    n = dim // 2
    W = 0.5 * (T - T.T)
    s = np.linalg.svd(W, compute_uv=False)
    if s[0] == 0 or s[-1] <= RANK_RTOL * s[0]:
        raise InadmissibleBracketError("symplectic form is degenerate")
    M = null_space(T)
    N = null_space(T.T)
    if M.shape[1] != n or N.shape[1] != n:
        raise InadmissibleBracketError(
            f"dim M = {M.shape[1]}, dim N = {N.shape[1]}; both must equal {n}"
        )
    MN = np.hstack([M, N])
    sv = np.linalg.svd(MN, compute_uv=False)
    if sv[-1] <= RANK_RTOL * sv[0]:
        raise InadmissibleBracketError("M and N do not span L")
    return PhaseSpace(dim, _frozen(T), _frozen(W), _frozen(canonical_basis(M)), _frozen(canonical_basis(N)))


def _span_equal(A, B, tol=1e-9):
    # Same column span iff projecting B onto span(A) leaves nothing.
    Q, _ = np.linalg.qr(A)
    resid = B - Q @ (Q.T @ B)
    return np.linalg.norm(resid) <= tol * max(1.0, np.linalg.norm(B))


def bracket_from_splitting(W, basisM, basisN):
    """Bracket ``[m + n, m' + n'] = 2 omega(m, n')`` for a chosen pair of
    complementary isotropic subspaces.
    """
    W = np.array(W, dtype=float)
    BM = np.atleast_2d(np.array(basisM, dtype=float))
    BN = np.atleast_2d(np.array(basisN, dtype=float))
    if BM.shape[0] != W.shape[0]:
        BM = BM.T
    if BN.shape[0] != W.shape[0]:
        BN = BN.T
    dim = W.shape[0]
    if np.linalg.norm(W + W.T) > 1e-12 * max(1.0, np.linalg.norm(W)):
        raise InadmissibleBracketError("omega must be antisymmetric")
    scale = np.linalg.norm(W)
    for name, B in (("M", BM), ("N", BN)):
        if np.linalg.norm(B.T @ W @ B) > 1e-10 * scale * np.linalg.norm(B) ** 2:
            raise InadmissibleBracketError(f"{name} is not isotropic")
    frame = np.hstack([BM, BN])
    if frame.shape != (dim, dim) or np.linalg.cond(frame) > COND_MAX:
        raise InadmissibleBracketError("M and N are not complementary")
    coords = np.linalg.inv(frame)
    pM = BM @ coords[: BM.shape[1]]
    pN = BN @ coords[BM.shape[1] :]
    T = 2.0 * pM.T @ W @ pN
    ps = build_phase_space(T)
    if not (_span_equal(ps.basisM, BM) and _span_equal(ps.basisN, BN)):
        raise InadmissibleBracketError("recomputed splitting differs from the input")
    return ps


def quotient(ps, xi):
    """Q-coordinates of ``q(xi)``; accepts a vector or a stack of vectors."""
    xi = np.asarray(xi)
    if xi.shape[-1] != ps.dim:
        raise ValueError(f"expected vectors of length {ps.dim}, got shape {xi.shape}")
    return xi @ ps.quotient_matrix.T


def standard_phase_space(n=1):
    """``n`` decoupled modes in ``(q_1..q_n, p_1..p_n)`` ordering with
    ``[xi, tau] = sum_k xi_{p_k} tau_{q_k}``.
    """
    T = np.zeros((2 * n, 2 * n))
    T[n:, :n] = np.eye(n)
    return build_phase_space(T)
