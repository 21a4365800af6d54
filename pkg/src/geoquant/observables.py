"""Quantized linear observables acting on coherent spans.

A linear observable ``F(xi) = f . xi`` has Hamiltonian vector ``X_F`` with
``2 omega(xi, X_F) = F(xi)``. Its quantization acts

* on full Schrödinger wave functions as ``-[X_F, phi] psi - i D_{X_F} psi``,
* on reduced ones as ``(-[X_F, phi] + i Omega(q X_F, phi)) psi - i D_{X_F} psi``,
* on holomorphic ones as ``F^+ psi - i D_{X_{F^-}} psi``.

All actions are carried out exactly on the polynomial prefactors. Complex
covectors ``f`` are accepted and act complex-linearly.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .correspondence import _as_matrix
from .errors import TruncationError
from .polynomial import Polynomial
from .spans import CoherentSpan, Term

EXP_TAIL_TOL = 1e-10
EXP_MAX_CAP = 80


@dataclass(frozen=True)
class ObservableSpec:
    """``F(xi) = constant + f . xi`` together with its Hamiltonian vector."""

    f: np.ndarray
    X: np.ndarray
    constant: complex = 0.0

    def __call__(self, xi):
        return self.constant + np.asarray(xi) @ self.f


def hamiltonian_vector(ps, f):
    """Solve ``2 W X = f``, i.e. ``2 omega(xi, X) = f . xi`` for all ``xi``."""
    return 0.5 * ps.W_inv @ np.asarray(f)


def observable(ps, f, constant=0.0):
    f = np.asarray(f)
    if f.shape != (ps.dim,):
        raise ValueError(f"covector must have length {ps.dim}")
    return ObservableSpec(f, hamiltonian_vector(ps, f), constant)


def configuration_observable(ps, k):
    """``F(xi) = (q xi)_k``, the k-th Q-coordinate."""
    return observable(ps, ps.quotient_matrix[k])


def _spec(ps, F):
    return F if isinstance(F, ObservableSpec) else observable(ps, F)


def split_pm(J, f):
    """Covectors of ``F^{+-}(xi) = (F(xi) -+ i F(J xi)) / 2``."""
    Jm = _as_matrix(J)
    f = np.asarray(f)
    return 0.5 * (f - 1j * Jm.T @ f), 0.5 * (f + 1j * Jm.T @ f)


def _schrodinger_terms(quant, F, terms):
    ps = quant.ps
    X = F.X
    v = quant.q(X)
    # -[X, phi] + i Omega(v, phi) as a covector on Q-coordinates.
    lin = -(X @ ps.T @ ps.basisN) + 1j * (quant.Omega @ v)
    out = []
    for t in terms:
        b, _ = quant.coherent_exponent(t.label)
        mult = Polynomial.linear(lin, F.constant - 1j * (b @ v))
        new = mult * t.poly - t.poly.directional(v) * 1j
        out.append(Term(t.coef, t.label, new))
    return out


def holomorphic_coefficients(quant, f):
    """``(alpha, gamma)`` with ``F`` acting as ``sum alpha_k z_k + sum gamma_k d/dz_k``."""
    fp, fm = split_pm(quant.J, f)
    alpha = np.sqrt(2.0) * (fp @ quant.E)
    gamma = -1j * quant.z(hamiltonian_vector(quant.ps, fm))
    return alpha, gamma


def _holomorphic_terms(quant, F, terms):
    alpha, gamma = holomorphic_coefficients(quant, F.f)
    zlin = Polynomial.linear(alpha, F.constant)
    out = []
    for t in terms:
        abar = np.conj(quant.z(t.label))
        new = zlin * t.poly + t.poly * complex(gamma @ abar)
        for k, gk in enumerate(gamma):
            if gk != 0:
                new = new + t.poly.deriv(k) * gk
        out.append(Term(t.coef, t.label, new))
    return out


def apply_schrodinger(quant, F, span):
    """Action on a full or reduced Schrödinger span (flavor taken from the span)."""
    if span.kind not in ("full", "reduced"):
        raise ValueError("apply_schrodinger needs a Schrödinger span")
    F = _spec(quant.ps, F)
    return CoherentSpan(quant, span.kind, _schrodinger_terms(quant, F, span.terms), span.cap)


def apply_holomorphic(quant, F, span):
    if span.kind != "holomorphic":
        raise ValueError("apply_holomorphic needs a holomorphic span")
    F = _spec(quant.ps, F)
    return CoherentSpan(quant, "holomorphic", _holomorphic_terms(quant, F, span.terms), span.cap)


def apply(quant, F, span):
    if span.kind == "holomorphic":
        return apply_holomorphic(quant, F, span)
    return apply_schrodinger(quant, F, span)


def ccr_constant(ps, F, G):
    """The predicted ``-2i omega(X_F, X_G)``."""
    F, G = _spec(ps, F), _spec(ps, G)
    return -2j * (F.X @ ps.W @ G.X)


@dataclass
class CommutatorResult:
    constant: complex      # <psi, [F, G] psi> / <psi, psi>
    expected: complex
    deviation: float       # ||[F, G] psi - expected psi|| / ||psi||


def commutator_defect(quant, F, G, span):
    """Extract the constant in ``(F G - G F) psi = c psi`` and compare with the prediction."""
    ps = quant.ps
    F, G = _spec(ps, F), _spec(ps, G)
    D = apply(quant, F, apply(quant, G, span)) - apply(quant, G, apply(quant, F, span))
    nn = span.inner(span).real
    c = span.inner(D) / nn
    expected = ccr_constant(ps, F, G)
    resid = (D - span * expected).simplify()
    dev = np.sqrt(max(resid.inner(resid).real, 0.0) / nn)
    return CommutatorResult(c, expected, float(dev))


@dataclass
class ExpCreationResult:
    series: CoherentSpan
    label: np.ndarray
    cap: int
    tail: float
    fidelity: float


def exp_creation_on_vacuum(quant, F, cap=None, tol=EXP_TAIL_TOL, max_cap=EXP_MAX_CAP, exact=False):
    """Sum ``exp(F^+) K_0`` as a power series in ``alpha . z``.

    The series terms are mutually orthogonal with squared norms ``r^m / m!``
    (``r = |alpha|^2``), so the truncation error is known exactly. The cap is
    raised until the tail falls below ``tol``.

    The fidelity uses the reproducing property for the overlap with the
    target and the orthogonal-term sum for the series norm. ``exact=True``
    computes both with Gaussian moments instead, which costs
    ``O(monomials^2)`` and is only practical for small ``n`` and caps.
    """
    ps = quant.ps
    F = _spec(ps, F)
    alpha, _ = holomorphic_coefficients(quant, F.f)
    r = float(np.vdot(alpha, alpha).real)
    label = -(_as_matrix(quant.J) @ F.X).real

    def tail(c):
        # sum_{m > c} r^m / m!, summed until the terms are negligible.
        s, m = 0.0, c + 1
        term = r**m / factorial(m) if r > 0 else 0.0
        while term > 0 and term > 1e-30 * max(s, 1e-300):
            s += term
            m += 1
            term *= r / m
        return np.sqrt(s)

    c = 8 if cap is None else int(cap)
    while tail(c) > tol:
        if c >= max_cap:
            raise TruncationError(f"series tail {tail(c):.3g} above {tol} at cap {c}")
        c += 4
    zlin = Polynomial.linear(alpha)
    poly = Polynomial.constant(quant.n)
    power = Polynomial.constant(quant.n)
    for m in range(1, c + 1):
        power = power * zlin * (1.0 / m)
        poly = poly + power
    series = CoherentSpan(quant, "holomorphic", [Term(1.0, np.zeros(ps.dim), poly)], cap=c)
    target = CoherentSpan.coherent(quant, "holomorphic", label, cap=c)
    if exact:
        fid = abs(target.inner(series)) / (target.norm() * series.norm())
    else:
        norm2 = sum(r**m / factorial(m) for m in range(c + 1))
        fid = abs(series(label)) / np.sqrt(abs(target(label)) * norm2)
    return ExpCreationResult(series, label, c, tail(c), float(fid))


def intertwine_defect(quant, F, span):
    """``||B(F psi) - F(B psi)|| / ||psi||`` for a Schrödinger span ``psi``."""
    from .bargmann import transform

    F = _spec(quant.ps, F)
    lhs = transform(apply_schrodinger(quant, F, span))
    rhs = apply_holomorphic(quant, F, transform(span))
    d = (lhs - rhs).simplify()
    return float(np.sqrt(max(d.inner(d).real, 0.0) / max(span.inner(span).real, 1e-300)))
