"""The Segal-Bargmann isomorphism between Schrödinger and holomorphic spans.

The closed-form transform is fixed on coherent labels (``K^S_tau -> K^H_tau``)
and carried to polynomial prefactors through the intertwining relation with
quantized observables: a Q-coordinate prefactor ``phi_k`` becomes the
holomorphic action of the configuration observable ``(q xi)_k``, and a
``z_k`` prefactor becomes the Schrödinger action of the complex covector of
``z_k``. The integral transforms are kept as independent quadrature oracles.
"""
from __future__ import annotations

import numpy as np

from .errors import QuadratureBudgetError
from .gaussian_numerics import DEFAULT_BUDGET, GaussianMeasure, gauss_hermite_grid, integrate_lebesgue
from .observables import apply_holomorphic, apply_schrodinger, configuration_observable, observable
from .phase_space import _span_equal
from .polynomial import Polynomial
from .spans import CoherentSpan, Term

L_ORDER = {1: 40, 2: 20}
Q_ORDER = {1: 40, 2: 20, 3: 12}


def kernel(quant, xi, phi):
    """``B(xi, phi)``; ``xi`` may be a batch ``(k, 2n)`` and/or ``phi`` a batch ``(m, n)``.

    Batched inputs broadcast to shape ``(k, m)`` (singleton axes dropped).
    """
    xi = np.asarray(xi, dtype=float)
    phi = np.asarray(phi, dtype=float)
    X = np.atleast_2d(xi)
    P = np.atleast_2d(phi)
    H, G, T = quant.H, quant.G, quant.ps.T
    jp = P @ quant.j.T                                    # (m, 2n)
    jqx = quant.q(X) @ quant.j.T                          # (k, 2n)
    per_phi = -0.5j * np.einsum("mi,ij,mj->m", jp, T, jp) - 0.5 * np.einsum("mi,ij,mj->m", jp, G, jp)
    per_xi = 0.25 * np.einsum("ki,ij,kj->k", X, G, X) - 0.5 * np.einsum("ki,ij,kj->k", jqx, H, X)
    cross = X @ (jp @ H).T                                # {j phi, xi}, shape (k, m)
    val = np.exp(cross + per_xi[:, None] + per_phi[None, :])
    if xi.ndim == 1:
        val = val[0]
    if phi.ndim == 1:
        val = val[..., 0]
    return val


# closed-form transform -----------------------------------------------------

def transform(span):
    """``B psi`` for a full or reduced Schrödinger span; returns a holomorphic span."""
    if span.kind == "holomorphic":
        raise ValueError("transform expects a Schrödinger span")
    q = span.quant
    full = span.to_full()
    config = [configuration_observable(q.ps, k) for k in range(q.n)]
    one = Polynomial.constant(q.n)
    out = []
    for t in full.terms:
        for alpha, c in t.poly.items():
            s = CoherentSpan(q, "holomorphic", [Term(t.coef * c, t.label, one)], span.cap)
            for k, ak in enumerate(alpha):
                for _ in range(ak):
                    s = apply_holomorphic(q, config[k], s)
            out.extend(s.terms)
    return CoherentSpan(q, "holomorphic", out, span.cap).simplify()


def inverse_transform(span, kind="full"):
    """``B^{-1} psi`` for a holomorphic span, as a full (default) or reduced span."""
    if span.kind != "holomorphic":
        raise ValueError("inverse_transform expects a holomorphic span")
    q = span.quant
    zobs = [observable(q.ps, q.zmat[k]) for k in range(q.n)]
    one = Polynomial.constant(q.n)
    out = []
    for t in span.terms:
        for alpha, c in t.poly.items():
            s = CoherentSpan(q, "full", [Term(t.coef * c, t.label, one)], span.cap)
            for k, ak in enumerate(alpha):
                for _ in range(ak):
                    s = apply_schrodinger(q, zobs[k], s)
            out.extend(s.terms)
    res = CoherentSpan(q, "full", out, span.cap).simplify()
    return res.to_reduced() if kind == "reduced" else res


# quadrature oracles ----------------------------------------------------------

def _order(table, n, order):
    if order is not None:
        return order
    if n not in table:
        raise QuadratureBudgetError(f"no default quadrature order for n = {n}")
    return table[n]


def transform_quadrature(quant, psi, xi, order=None, budget=DEFAULT_BUDGET):
    """``int psi(phi) B(xi, phi) d mu_Q(phi)`` at the points ``xi``.

    ``psi`` maps a batch of Q-points to values (full wave function).
    """
    S = quant.omega.S
    measure = GaussianMeasure(S)
    xi = np.atleast_2d(np.asarray(xi, dtype=float))
    nodes, wts = gauss_hermite_grid(measure, _order(Q_ORDER, quant.n, order), budget)
    # d mu_Q = exp(phi^T S phi) d nu
    vals = np.asarray(psi(nodes)) * np.exp(np.einsum("ki,ij,kj->k", nodes, S, nodes))
    K = kernel(quant, xi, nodes).reshape(xi.shape[0], nodes.shape[0])
    return K @ (wts * vals)


def _nu_L_density(quant):
    G = quant.G
    norm = np.pi ** (-quant.n) * np.sqrt(np.linalg.det(G / 2.0))
    return lambda x: norm * np.exp(-0.5 * np.einsum("ki,ij,kj->k", x, G, x))


def _mu_L_norm(quant):
    return np.pi ** (-quant.n) * np.sqrt(np.linalg.det(quant.G / 2.0))


def inverse_transform_quadrature(quant, eta, phi, order=None, budget=DEFAULT_BUDGET):
    """``int eta(xi) conj(B(xi, phi)) d nu_L(xi)`` at the Q-points ``phi``."""
    Pq = quant.ps.quotient_matrix
    M = Pq.T @ quant.j.T @ quant.G
    P = 0.25 * quant.G + 0.25 * (M + M.T)
    dens = _nu_L_density(quant)
    phi = np.atleast_2d(np.asarray(phi, dtype=float))
    out = []
    for p in phi:
        f = lambda x, p=p: np.asarray(eta(x)) * np.conj(kernel(quant, x, p)) * dens(x)
        out.append(integrate_lebesgue(f, P, order=_order(L_ORDER, quant.n, order), budget=budget))
    return np.array(out)


def _pairing_precision(quant):
    Pq = quant.ps.quotient_matrix
    return 0.25 * quant.G + 0.5 * Pq.T @ quant.omega.S @ Pq


def alpha_values(quant, xi):
    xi = np.atleast_2d(xi)
    return np.exp(0.5j * np.einsum("ki,ij,kj->k", xi, quant.ps.T, xi) - 0.25 * np.einsum("ki,ij,kj->k", xi, quant.G, xi))


def pairing(hspan, sspan):
    """Closed form ``<psi', B psi>`` for a holomorphic ``psi'`` and Schrödinger ``psi``."""
    return hspan.inner(transform(sspan))


def pairing_quadrature(hspan, sspan, order=None, budget=DEFAULT_BUDGET):
    """``int conj(psi'(xi)) psi(q xi) conj(alpha(xi)) d mu_L(xi)``."""
    q = hspan.quant
    full = sspan.to_full()
    Pq = q.ps.quotient_matrix
    norm = _mu_L_norm(q)
    f = lambda x: np.conj(hspan(x)) * full(x @ Pq.T) * np.conj(alpha_values(q, x)) * norm
    return integrate_lebesgue(f, _pairing_precision(q), order=_order(L_ORDER, q.n, order), budget=budget)


def pairing_inverse_quadrature(sspan, hspan, order=None, budget=DEFAULT_BUDGET):
    """``int conj(psi'(q xi)) psi(xi) alpha(xi) d mu_L(xi)`` = ``<psi', B^{-1} psi>``."""
    q = hspan.quant
    full = sspan.to_full()
    Pq = q.ps.quotient_matrix
    norm = _mu_L_norm(q)
    f = lambda x: np.conj(full(x @ Pq.T)) * hspan(x) * alpha_values(q, x) * norm
    return integrate_lebesgue(f, _pairing_precision(q), order=_order(L_ORDER, q.n, order), budget=budget)


# coordinate form ---------------------------------------------------------------

def coordinate_kernel(n, z, q):
    """``exp(sqrt(2) q.z - q.q/2 - z.z/2)`` on ``C^n x R^n``."""
    z = np.asarray(z, dtype=complex)
    q = np.asarray(q, dtype=float)
    if z.shape[-1] != n or q.shape[-1] != n:
        raise ValueError(f"expected length-{n} coordinates")
    return np.exp(np.sqrt(2.0) * np.sum(q * z, axis=-1) - 0.5 * np.sum(q * q, axis=-1) - 0.5 * np.sum(z * z, axis=-1))


def require_n_equals_jm(quant):
    JM = quant.J.J @ quant.ps.basisM
    if not _span_equal(JM, quant.ps.basisN, tol=1e-9):
        raise ValueError("the coordinate form needs N = JM")


def kernel_via_coordinates(quant, xi, phi):
    """``B(xi, phi)`` computed through the coordinate form (needs ``N = JM``).

    The coordinates are ``z = z(xi)`` and ``q = Phi^{-1} phi`` with ``Phi`` an
    ``Re Omega``-orthonormal basis of Q.
    """
    require_n_equals_jm(quant)
    z = quant.z(xi)
    qc = np.linalg.solve(quant.Phi, np.asarray(phi, dtype=float).T).T
    return coordinate_kernel(quant.n, z, qc)
