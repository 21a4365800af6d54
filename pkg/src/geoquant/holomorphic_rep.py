"""Holomorphic representation on L for a compatible complex structure J.

Coherent states are ``K_tau(xi) = exp({tau, xi} / 2)`` with normalized
versions ``exp(-g(tau, tau)/4) K_tau``. The measure ``nu_L`` becomes the
standard ``pi^{-n} exp(-|z|^2)`` in the complex coordinates ``z`` of
:class:`geoquant.spans.Quantization`.
"""
from __future__ import annotations

import numpy as np

from .correspondence import _as_matrix, metric
from .spans import CoherentSpan

REPRODUCE_TOL = 1e-10


def coherent_h(ps, J, tau, xi, kind="standard"):
    """``K_tau(xi)`` or its normalized version, straight from the bracket forms."""
    G = metric(ps, J)
    tau = np.asarray(tau, dtype=float)
    xi = np.asarray(xi, dtype=float)
    val = np.exp(0.5 * (tau @ G @ xi + 2j * tau @ ps.W @ xi))
    if kind == "normalized":
        val = val * np.exp(-0.25 * tau @ G @ tau)
    elif kind != "standard":
        raise ValueError("kind must be 'standard' or 'normalized'")
    return val


def normalized_coherent_span(quant, tau, coef=1.0):
    tau = np.asarray(tau, dtype=float)
    return CoherentSpan.coherent(quant, "holomorphic", tau, coef * np.exp(-0.25 * quant.g(tau, tau)))


def inner_product_h(a, b):
    if a.kind != "holomorphic" or b.kind != "holomorphic":
        raise ValueError("inner_product_h needs holomorphic spans")
    return a.inner(b)


def reproduce(psi, tau, tol=REPRODUCE_TOL):
    """``<K_tau, psi>``, checked against the pointwise value ``psi(tau)``."""
    K = CoherentSpan.coherent(psi.quant, "holomorphic", tau, cap=psi.cap)
    val = K.inner(psi)
    direct = psi(np.asarray(tau, dtype=float))
    scale = max(1.0, abs(direct))
    if abs(val - direct) > tol * scale:
        raise AssertionError(f"reproducing property violated: {val} vs {direct}")
    return val


def alpha_fn(ps, J, xi):
    """``alpha(xi) = exp(i[xi, xi]/2 - g(xi, xi)/4)``."""
    xi = np.asarray(xi, dtype=float)
    return np.exp(0.5j * (xi @ ps.T @ xi) - 0.25 * xi @ metric(ps, J) @ xi)


def kahler_potential(ps, J, xi):
    xi = np.asarray(xi, dtype=float)
    return 0.5 * xi @ metric(ps, J) @ xi


def theta_adapted(ps, J, tau, xi):
    """The adapted potential ``Theta(tau, xi) = -(i/2){tau, xi}``."""
    tau = np.asarray(tau, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return -0.5j * (tau @ metric(ps, J) @ xi + 2j * tau @ ps.W @ xi)


def holomorphic_coordinates(quant, xi):
    """Complex coordinates ``z_k = x_k + i y_k`` with ``xi = sqrt(2) sum(x_k e_k + y_k J e_k)``."""
    return quant.z(xi)


def cauchy_riemann_residual(f, quant, xi, h=1e-5):
    """Max over modes of ``|df/dx_k + i df/dy_k| / 2`` by central differences.

    ``f`` is a function on L; ``x_k, y_k`` are the real and imaginary parts of ``z_k``.
    """
    J = _as_matrix(quant.J)
    xi = np.asarray(xi, dtype=float)
    worst = 0.0
    for k in range(quant.n):
        ex = np.sqrt(2.0) * quant.E[:, k]
        ey = J @ ex
        dfx = (f(xi + h * ex) - f(xi - h * ex)) / (2 * h)
        dfy = (f(xi + h * ey) - f(xi - h * ey)) / (2 * h)
        worst = max(worst, abs(0.5 * (dfx + 1j * dfy)))
    return worst
