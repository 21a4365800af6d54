"""Seeded random phase spaces, complex structures, vacuum forms and spans.

Used by the property tests, the acceptance suite and the CLI check suites.
Scales are kept moderate so that the generated instances stay well inside
the conditioning limits of the library.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg as sla

from .correspondence import VacuumForm, complex_structure
from .phase_space import build_phase_space
from .polynomial import Polynomial
from .spans import CoherentSpan, Term


def as_rng(seed=None):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_invertible(n, rng, spread=0.5):
    """``exp(spread * X) @ orthogonal``: condition number at most ``exp(2 spread ||X||)``."""
    X = rng.normal(size=(n, n)) / np.sqrt(n)
    Q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    return sla.expm(spread * X) @ Q


def random_bracket(n, rng):
    """A bracket matrix whose M and N are random transverse subspaces."""
    rng = as_rng(rng)
    F = random_invertible(2 * n, rng)
    P = random_invertible(n, rng)
    core = np.zeros((2 * n, 2 * n))
    core[n:, :n] = P               # [xi, tau] = (M-part of xi) . P (N-part of tau)
    Finv = np.linalg.inv(F)
    return Finv.T @ core @ Finv


def random_phase_space(n, rng):
    return build_phase_space(random_bracket(n, as_rng(rng)))


def _standard_form(n):
    Om = np.zeros((2 * n, 2 * n))
    Om[:n, n:] = -np.eye(n)
    Om[n:, :n] = np.eye(n)
    return Om


def darboux_frame(ps):
    """``D`` with ``D^T W D = W_std = [[0, -1], [1, 0]] / 2`` in ``(q, p)`` ordering."""
    n = ps.n
    Tm, Z = sla.schur(ps.W, output="real")
    qs, pcols = [], []
    for k in range(n):
        u, v = Z[:, 2 * k], Z[:, 2 * k + 1]
        b = Tm[2 * k, 2 * k + 1]
        if b > 0:
            u, v, b = v, u, -b
        s = np.sqrt(-0.5 / b)
        qs.append(s * u)
        pcols.append(s * v)
    D = np.column_stack(qs + pcols)
    if not np.allclose(D.T @ ps.W @ D, 0.5 * _standard_form(n), atol=1e-10):
        raise RuntimeError("Darboux frame construction failed")
    return D


def random_symplectic(n, rng, spread=0.5):
    """``exp(-Om0 Sym)``: preserves the standard form for symmetric ``Sym``."""
    X = rng.normal(size=(2 * n, 2 * n)) / np.sqrt(2 * n)
    return sla.expm(-spread * _standard_form(n) @ (X + X.T) / 2)


def random_complex_structure(ps, rng, spread=0.5):
    """A compatible complex structure, drawn independently of any vacuum form."""
    rng = as_rng(rng)
    n = ps.n
    D = darboux_frame(ps) @ random_symplectic(n, rng, spread)
    Jstd = -_standard_form(n)      # [[0, 1], [-1, 0]]
    return complex_structure(ps, D @ Jstd @ np.linalg.inv(D))


def random_vacuum_form(n, rng, spread=0.5):
    rng = as_rng(rng)
    R = random_invertible(n, rng, spread)
    S = R @ R.T
    Y = rng.normal(size=(n, n)) * spread
    return VacuumForm(S, 0.5 * (Y + Y.T))


def random_polynomial(n, rng, degree=2, scale=0.5):
    rng = as_rng(rng)
    p = Polynomial.zero(n)
    for alpha in _multi_indices(n, degree):
        c = complex(rng.normal(), rng.normal()) * scale
        p = p + Polynomial.monomial(alpha, c)
    return p


def _multi_indices(n, degree):
    out = [()]
    for _ in range(n):
        out = [a + (k,) for a in out for k in range(degree + 1)]
    return [a for a in out if sum(a) <= degree]


def random_label(ps, rng, scale=0.7):
    return as_rng(rng).normal(size=ps.dim) * scale


def random_span(quant, kind, rng, terms=3, degree=1, scale=0.7, cap=8):
    """A span of ``terms`` coherent states with random polynomial prefactors of degree ``<= degree``."""
    rng = as_rng(rng)
    items = []
    for _ in range(terms):
        coef = complex(rng.normal(), rng.normal())
        poly = random_polynomial(quant.n, rng, degree) if degree > 0 else Polynomial.constant(quant.n)
        items.append(Term(coef, random_label(quant.ps, rng, scale), poly))
    return CoherentSpan(quant, kind, items, cap)


def random_covector(ps, rng, scale=1.0):
    return as_rng(rng).normal(size=ps.dim) * scale
