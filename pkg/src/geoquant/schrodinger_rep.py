"""Schrödinger representation on the configuration space Q.

Wave functions are evaluated in Q-coordinates. The vacuum is
``K_0(phi) = exp(-Omega(phi, phi) / 2)``, reduced coherent states are
``k_tau(phi) = exp(Omega(q tau, phi) + i[tau, phi] - Omega(q tau, q tau)/2 - i[tau, tau]/2)``,
and full coherent states factor as ``K^S_tau = exp(g(tau, tau)/4) k_tau K_0``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .correspondence import VacuumForm
from .polynomial import Polynomial
from .spans import CoherentSpan, Term

GRAM_COND_MAX = 1e12
RIDGE = 1e-10


def _omega_matrix(omega):
    if isinstance(omega, VacuumForm):
        return omega.matrix
    return np.atleast_2d(np.asarray(omega, dtype=complex))


def vacuum_wavefunction(omega, phi):
    """``K_0(phi)``; ``omega`` is a :class:`VacuumForm` or a complex matrix."""
    Om = _omega_matrix(omega)
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    return np.exp(-0.5 * phi @ Om @ phi)


def coherent_wavefunction(quant, tau, phi, kind="reduced"):
    """``k_tau(phi)`` (``kind="reduced"``) or ``K^S_tau(phi)`` (``kind="full"``)."""
    if kind not in ("reduced", "full"):
        raise ValueError("kind must be 'reduced' or 'full'")
    return CoherentSpan.coherent(quant, kind, tau)(np.atleast_1d(phi))


def label_from_sigma_lambda(ps, sigma, lam):
    """The phase-space vector ``i_N^{-1}(sigma) + lambda_M^{-1}(lambda)``."""
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    return ps.basisN @ sigma + ps.basisM @ np.linalg.solve(ps.pairing.T, lam)


def sigma_lambda_from_label(ps, tau):
    tau = np.asarray(tau, dtype=float)
    return ps.quotient_matrix @ tau, ps.pairing.T @ (ps.m_coords @ tau)


def coherent_from_sigma_lambda(omega, sigma, lam, phi):
    """``exp(Omega(sigma, phi) + i lam(phi) - Omega(sigma, sigma)/2 - i lam(sigma)/2)``.

    Needs only Q and Omega: ``sigma`` is a Q-vector, ``lam`` a Q-covector.
    """
    Om = _omega_matrix(omega)
    sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    return np.exp(sigma @ Om @ phi + 1j * lam @ phi - 0.5 * sigma @ Om @ sigma - 0.5j * lam @ sigma)


def inner_product(a, b):
    """``<a, b>`` for Schrödinger spans (conjugate-linear in ``a``)."""
    if a.kind == "holomorphic" or b.kind == "holomorphic":
        raise ValueError("use holomorphic_rep.inner_product_h for holomorphic spans")
    return a.inner(b)


@dataclass
class DensityProbeResult:
    residuals: np.ndarray      # residuals[k] uses the first k grid states; residuals[0] = ||target||
    labels: np.ndarray
    regularized: bool
    condition: float


def plane_wave_labels(ps, count, spacing=0.5, direction=None):
    """Labels in M on a line, ``tau_j = j * spacing * m`` for ``j = 1..count``.

    Their reduced coherent states are the plane waves ``exp(i [tau_j, phi])``.
    """
    m = ps.basisM[:, 0] if direction is None else np.asarray(direction, dtype=float)
    return np.array([(j + 1) * spacing * m for j in range(count)])


def density_probe(quant, target, labels):
    """Residuals of the best approximation of ``target`` by the first ``k`` coherent states.

    ``target`` is a reduced span; ``labels`` an ordered grid. The residual
    sequence comes from a Cholesky factorization of the Gram matrix, so it
    is non-increasing by construction.
    """
    target = target.to_reduced()
    labels = np.atleast_2d(np.asarray(labels, dtype=float))
    basis = [CoherentSpan.coherent(quant, "reduced", t) for t in labels]
    k = len(basis)
    gram = np.zeros((k, k), dtype=complex)
    rhs = np.zeros(k, dtype=complex)
    for i in range(k):
        rhs[i] = basis[i].inner(target)
        for j in range(i, k):
            gram[i, j] = basis[i].inner(basis[j])
            gram[j, i] = np.conj(gram[i, j])
    cond = float(np.linalg.cond(gram)) if k else 1.0
    regularized = not np.isfinite(cond) or cond > GRAM_COND_MAX
    if regularized:
        gram = gram + RIDGE * np.eye(k)
    tnorm2 = target.inner(target).real
    res = [np.sqrt(max(tnorm2, 0.0))]
    if k:
        L = np.linalg.cholesky(gram)
        c = solve_triangular(L, rhs, lower=True)
        explained = np.cumsum(np.abs(c) ** 2)
        res.extend(np.sqrt(np.maximum(tnorm2 - explained, 0.0)))
    return DensityProbeResult(np.array(res), labels, regularized, cond)


def sample_grid(n, lo=-3.0, hi=3.0, points=41):
    axes = [np.linspace(lo, hi, points)] * n
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def write_samples_csv(path, span, phis):
    """Write ``phi_1..phi_n, re, im`` rows for a Schrödinger span."""
    phis = np.atleast_2d(phis)
    vals = span(phis)
    n = phis.shape[1]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f"phi_{k + 1}" for k in range(n)] + ["re", "im"])
        for p, v in zip(phis, vals):
            w.writerow([repr(float(x)) for x in p] + [repr(float(v.real)), repr(float(v.imag))])


def degree_one_target(quant, coeffs=None):
    """``(c . phi) K_0`` as a reduced span, the standard density-probe target."""
    c = np.ones(quant.n) if coeffs is None else np.asarray(coeffs)
    return CoherentSpan(quant, "reduced", [Term(1.0, np.zeros(quant.ps.dim), Polynomial.linear(c))])
