"""Complex structures on L and vacuum forms on Q, and the maps between them.

A compatible complex structure ``J`` (``J^2 = -1``, ``J^T W J = W``,
``G = 2 W J`` positive definite) determines the complex symmetric form
``Omega(phi, phi') = g(j phi, j phi') - i [j phi, phi']`` on Q, and every
such form with positive definite real part comes from exactly one ``J``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import IllConditionedError, InvalidComplexStructureError, InvalidVacuumFormError
from .phase_space import COND_MAX

J_TOL = 1e-10


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def _sym(a):
    return 0.5 * (a + a.T)


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    J: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "J", _frozen(self.J))


@dataclass(frozen=True, eq=False)
class VacuumForm:
    """``Omega = S + iA`` on Q-coordinates; ``S`` symmetric positive definite."""

    S: np.ndarray
    A: np.ndarray

    def __post_init__(self):
        S = np.atleast_2d(np.array(self.S, dtype=float))
        A = np.atleast_2d(np.array(self.A, dtype=float))
        if S.shape != A.shape or S.shape[0] != S.shape[1]:
            raise InvalidVacuumFormError(f"S and A must be square of equal shape, got {S.shape}, {A.shape}")
        scale = max(1.0, np.abs(S).max(), np.abs(A).max())
        if np.abs(S - S.T).max() > 1e-10 * scale or np.abs(A - A.T).max() > 1e-10 * scale:
            raise InvalidVacuumFormError("S and A must be symmetric")
        S, A = _sym(S), _sym(A)
        if np.linalg.eigvalsh(S).min() <= 0:
            raise InvalidVacuumFormError("real part of Omega must be positive definite")
        object.__setattr__(self, "S", _frozen(S))
        object.__setattr__(self, "A", _frozen(A))

    @property
    def n(self):
        return self.S.shape[0]

    @property
    def matrix(self):
        return self.S + 1j * self.A

    def __call__(self, phi, phi2):
        return np.asarray(phi) @ self.matrix @ np.asarray(phi2)


def _as_matrix(J):
    return J.J if isinstance(J, ComplexStructure) else np.asarray(J, dtype=float)


def complex_structure_defects(ps, J):
    """Residuals of the three defining properties (relative to scale)."""
    J = _as_matrix(J)
    I = np.eye(ps.dim)
    G = 2.0 * ps.W @ J
    return {
        "square": np.abs(J @ J + I).max(),
        "symplectic": np.abs(J.T @ ps.W @ J - ps.W).max(),
        "metric_asymmetry": np.abs(G - G.T).max(),
        "metric_min_eig": np.linalg.eigvalsh(_sym(G)).min(),
    }


def complex_structure(ps, J):
    """Validate ``J`` against the phase space and wrap it."""
    Jm = _as_matrix(J)
    if Jm.shape != (ps.dim, ps.dim):
        raise InvalidComplexStructureError(f"J must be {ps.dim}x{ps.dim}")
    d = complex_structure_defects(ps, Jm)
    nJ = max(1.0, np.abs(Jm).max())
    nW = max(np.abs(ps.W).max(), 1e-300)
    if d["square"] > J_TOL * nJ**2:
        raise InvalidComplexStructureError(f"J^2 != -1 (defect {d['square']:.3g})")
    if d["symplectic"] > J_TOL * nW * nJ**2:
        raise InvalidComplexStructureError(f"J does not preserve omega (defect {d['symplectic']:.3g})")
    G = 2.0 * ps.W @ Jm
    gnorm = np.abs(G).max()
    if d["metric_asymmetry"] > J_TOL * nW * nJ**2 or d["metric_min_eig"] <= J_TOL * gnorm:
        raise InvalidComplexStructureError("2 W J is not symmetric positive definite")
    return J if isinstance(J, ComplexStructure) else ComplexStructure(Jm)


def reference_complex_structure(ps):
    """The compatible ``J0 = -W (W^T W)^{-1/2}`` built from omega alone."""
    K = np.real(sla.sqrtm(ps.W.T @ ps.W))
    return ComplexStructure(-ps.W @ np.linalg.inv(K))


def metric(ps, J):
    """``G = 2 W J``, the matrix of ``g(tau, xi) = 2 omega(tau, J xi)``."""
    return _sym(2.0 * ps.W @ _as_matrix(J))


def braces(ps, J, tau, xi):
    """``{tau, xi} = g(tau, xi) + 2i omega(tau, xi)``.

    Conjugate-linear in ``tau`` and complex-linear in ``xi`` with respect to
    multiplication by ``J``: ``{tau, J xi} = i {tau, xi}``.
    """
    tau, xi = np.asarray(tau), np.asarray(xi)
    return tau @ metric(ps, J) @ xi + 2j * (tau @ ps.W @ xi)


def braces_matrix(ps, J):
    """Complex matrix ``H`` with ``{tau, xi} = tau^T H xi`` for real vectors."""
    return metric(ps, J) + 2j * ps.W


def j_map(ps, J):
    """``2n x n`` matrix of the section ``j: Q -> JM`` with ``q o j = id``."""
    JM = _as_matrix(J) @ ps.basisM
    return JM @ np.linalg.inv(ps.quotient_matrix @ JM)


def omega_from_j(ps, J):
    j = j_map(ps, J)
    S = j.T @ metric(ps, J) @ j
    A = -(j.T @ ps.T @ ps.basisN)
    return VacuumForm(_sym(S), _sym(A))


def _check_cond(M, what):
    c = np.linalg.cond(M)
    if not np.isfinite(c) or c > COND_MAX:
        raise IllConditionedError(f"{what} is numerically singular (condition number {c:.3g})")


def lagrangian_complement(ps, omega):
    """Basis of ``X = {xi : Im Omega(q xi, .) + [xi, .] = 0}``, a Lagrangian
    complement of M. Column ``k`` projects to the ``k``-th Q basis vector.
    """
    P = ps.pairing
    _check_cond(P, "the M x N pairing")
    return ps.basisN - ps.basisM @ np.linalg.solve(P.T, omega.A)


def j_from_omega(ps, omega):
    """The unique compatible complex structure inducing ``omega``.

    ``J`` acts as ``beta: X -> M`` on X and as ``-beta^{-1}`` on M, where
    ``Re Omega(q xi, .) + [beta xi, .] = 0``.
    """
    if omega.n != ps.n:
        raise InvalidVacuumFormError(f"Omega is {omega.n}-dimensional, Q is {ps.n}-dimensional")
    P = ps.pairing
    _check_cond(P, "the M x N pairing")
    _check_cond(omega.S, "Re Omega")
    BX = lagrangian_complement(ps, omega)
    frame = np.hstack([BX, ps.basisM])
    _check_cond(frame, "the X + M frame")
    beta = -np.linalg.solve(P.T, omega.S)           # M-coords of beta(BX c) = beta @ c
    minus_beta_inv = np.linalg.solve(omega.S, P.T)  # X-coords of -beta^{-1}(BM b)
    images = np.hstack([ps.basisM @ beta, BX @ minus_beta_inv])
    J = images @ np.linalg.inv(frame)
    return complex_structure(ps, J)


def holo_projector(ps, J):
    """``P+ = (1 - iJ) / 2``, projector onto the holomorphic polarization."""
    return 0.5 * (np.eye(ps.dim) - 1j * _as_matrix(J))


def abcd_from_j(ps, J):
    """Blocks of ``J`` in the N + M splitting, as matrices in the basisN /
    basisM frames: ``A: N->N``, ``B: M->N``, ``C: M->M``, ``D: N->M``.
    """
    Jm = _as_matrix(J)
    JN, JM = Jm @ ps.basisN, Jm @ ps.basisM
    A = ps.quotient_matrix @ JN
    B = ps.quotient_matrix @ JM
    C = ps.m_coords @ JM
    D = ps.m_coords @ JN
    for name, blk in (("B", B), ("D", D)):
        _check_cond(blk, name)
    return A, B, C, D


def j_from_abcd(ps, A, B, C, D):
    frame = np.hstack([ps.basisN, ps.basisM])
    images = np.hstack([ps.basisN @ A + ps.basisM @ D, ps.basisN @ B + ps.basisM @ C])
    return images @ np.linalg.inv(frame)


def omega_from_abcd(ps, B, C):
    """``Omega(phi, phi') = [B^{-1} phi, phi'] - i [C B^{-1} phi, phi']``."""
    B = np.atleast_2d(np.asarray(B, dtype=float))
    C = np.atleast_2d(np.asarray(C, dtype=float))
    _check_cond(B, "B")
    Binv = np.linalg.inv(B)
    S = Binv.T @ ps.pairing
    A = -(C @ Binv).T @ ps.pairing
    return VacuumForm(S, A)
