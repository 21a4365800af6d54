"""Quantization context and finite coherent-polynomial spans.

A :class:`CoherentSpan` is a finite sum of terms ``c * p * core_tau`` where
the core depends on the representation:

``reduced``      ``core = k_tau(phi)``, the reduced Schrödinger coherent state;
``full``         ``core = K^S_tau(phi)``, the full Schrödinger coherent state;
``holomorphic``  ``core = K^H_tau(xi) = exp(conj(z(tau)) . z(xi))``.

Schrödinger prefactors are polynomials in the Q-coordinates ``phi``;
holomorphic prefactors are polynomials in the complex coordinates ``z(xi)``
(never in ``conj(z)``), so holomorphy holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb, factorial

import numpy as np

from .correspondence import (
    ComplexStructure,
    VacuumForm,
    complex_structure,
    j_from_omega,
    j_map,
    metric,
    omega_from_j,
)
from .errors import DegreeCapError, InvalidVacuumFormError
from .gaussian_numerics import WickMoments
from .polynomial import Polynomial

DEFAULT_CAP = 8
KINDS = ("full", "reduced", "holomorphic")


class Quantization:
    """All derived data for one phase space with a chosen ``J`` (equivalently ``Omega``).

    Give either ``J`` or ``omega``; the other is computed. When both are
    given they must correspond to each other.
    """

    def __init__(self, ps, J=None, omega=None):
        if J is None and omega is None:
            raise ValueError("need a complex structure or a vacuum form")
        self.ps = ps
        if J is None:
            J = j_from_omega(ps, omega)
        J = complex_structure(ps, J)
        derived = omega_from_j(ps, J)
        if omega is None:
            omega = derived
        elif not (np.allclose(omega.S, derived.S, atol=1e-9) and np.allclose(omega.A, derived.A, atol=1e-9)):
            raise InvalidVacuumFormError("the vacuum form does not belong to the complex structure")
        self.J: ComplexStructure = J
        self.omega: VacuumForm = omega

    @property
    def n(self):
        return self.ps.n

    @cached_property
    def G(self):
        return metric(self.ps, self.J)

    @cached_property
    def H(self):
        """Matrix of the sesquilinear form ``{tau, xi} = tau^T H xi``."""
        return self.G + 2j * self.ps.W

    @cached_property
    def j(self):
        return j_map(self.ps, self.J)

    @cached_property
    def Omega(self):
        return self.omega.matrix

    @cached_property
    def S_inv(self):
        return np.linalg.inv(self.omega.S)

    @cached_property
    def Phi(self):
        """Columns form an ``Re Omega``-orthonormal basis of Q."""
        U = np.linalg.cholesky(self.omega.S).T
        return np.linalg.inv(U)

    @cached_property
    def E(self):
        """``e_k = j(Phi_k)``: a g-orthonormal real basis of ``JM``, complex basis of L."""
        return self.j @ self.Phi

    @cached_property
    def zmat(self):
        """``z(xi) = zmat @ xi`` with ``z_k = {e_k, xi} / sqrt(2)``."""
        return (self.E.T @ self.H) / np.sqrt(2.0)

    @cached_property
    def zinv(self):
        """Real ``2n x 2n`` map ``(Re z, Im z) -> xi``."""
        return np.sqrt(2.0) * np.hstack([self.E, self.J.J @ self.E])

    def z(self, xi):
        return np.asarray(xi) @ self.zmat.T

    def xi_from_z(self, z):
        z = np.asarray(z)
        return np.concatenate([z.real, z.imag], axis=-1) @ self.zinv.T

    def g(self, a, b):
        return np.asarray(a) @ self.G @ np.asarray(b)

    def braces(self, tau, xi):
        return np.asarray(tau) @ self.H @ np.asarray(xi)

    def q(self, xi):
        return np.asarray(xi) @ self.ps.quotient_matrix.T

    # Reduced coherent state k_tau(phi) = exp(b . phi + d).
    def coherent_exponent(self, tau):
        tau = np.asarray(tau)
        qt = self.q(tau)
        b = self.Omega @ qt + 1j * (self.ps.basisN.T @ (self.ps.T.T @ tau))
        d = -0.5 * qt @ self.Omega @ qt - 0.5j * (tau @ self.ps.T @ tau)
        return b, d

    def full_factor(self, tau):
        """``K^S_tau = full_factor * k_tau * K_0``."""
        return np.exp(0.25 * self.g(tau, tau))


@dataclass(frozen=True)
class Term:
    coef: complex
    label: np.ndarray
    poly: Polynomial


class CoherentSpan:
    """Finite linear combination of polynomial-weighted coherent states."""

    def __init__(self, quant, kind, terms=(), cap=DEFAULT_CAP):
        if kind not in KINDS:
            raise ValueError(f"unknown representation {kind!r}")
        self.quant = quant
        self.kind = kind
        self.cap = cap
        clean = []
        for t in terms:
            if not isinstance(t, Term):
                t = Term(*t)
            label = np.array(t.label, dtype=float)
            if label.shape != (quant.ps.dim,):
                raise ValueError(f"label must have length {quant.ps.dim}")
            poly = t.poly if t.poly is not None else Polynomial.constant(quant.n)
            if poly.degree > cap:
                raise DegreeCapError(f"prefactor degree {poly.degree} exceeds the cap {cap}")
            if t.coef != 0 and not poly.is_zero():
                clean.append(Term(complex(t.coef), label, poly))
        self.terms = tuple(clean)

    # construction helpers
    @classmethod
    def coherent(cls, quant, kind, tau, coef=1.0, poly=None, cap=DEFAULT_CAP):
        poly = Polynomial.constant(quant.n) if poly is None else poly
        return cls(quant, kind, [Term(coef, tau, poly)], cap)

    @classmethod
    def zero(cls, quant, kind, cap=DEFAULT_CAP):
        return cls(quant, kind, (), cap)

    def _like(self, terms, cap=None):
        return CoherentSpan(self.quant, self.kind, terms, self.cap if cap is None else cap)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"CoherentSpan({self.kind}, {len(self.terms)} terms)"

    @property
    def degree(self):
        return max((t.poly.degree for t in self.terms), default=-1)

    def __add__(self, other):
        self._check(other)
        return self._like(self.terms + other.terms, max(self.cap, other.cap))

    def __neg__(self):
        return self._like([Term(-t.coef, t.label, t.poly) for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return self._like([Term(t.coef * c, t.label, t.poly) for t in self.terms])

    __rmul__ = __mul__

    def _check(self, other):
        if other.kind != self.kind or other.quant is not self.quant:
            raise ValueError("spans live in different representations")

    def simplify(self, atol=1e-13):
        """Merge terms with equal labels (coefficients absorbed into the prefactor)."""
        groups = []
        for t in self.terms:
            for g in groups:
                if np.allclose(g[0], t.label, rtol=0, atol=atol):
                    g[1] = g[1] + t.poly * t.coef
                    break
            else:
                groups.append([t.label, t.poly * t.coef])
        return self._like([Term(1.0, lab, p) for lab, p in groups if not p.is_zero()])

    def to_reduced(self):
        """Re-express a full Schrödinger span against ``k_tau`` cores."""
        if self.kind == "reduced":
            return self
        if self.kind != "full":
            raise ValueError("only Schrödinger spans have a reduced form")
        q = self.quant
        terms = [Term(t.coef * q.full_factor(t.label), t.label, t.poly) for t in self.terms]
        return CoherentSpan(q, "reduced", terms, self.cap)

    def to_full(self):
        if self.kind == "full":
            return self
        if self.kind != "reduced":
            raise ValueError("only Schrödinger spans have a full form")
        q = self.quant
        terms = [Term(t.coef / q.full_factor(t.label), t.label, t.poly) for t in self.terms]
        return CoherentSpan(q, "full", terms, self.cap)

    def __call__(self, x):
        """Evaluate at Q-points (Schrödinger) or L-points (holomorphic); batches allowed."""
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        xs = np.atleast_2d(x)
        q = self.quant
        out = np.zeros(xs.shape[0], dtype=complex)
        if self.kind == "holomorphic":
            zs = q.z(xs)
            for t in self.terms:
                a = q.z(t.label)
                out += t.coef * t.poly(zs) * np.exp(zs @ np.conj(a))
        else:
            vac = np.exp(-0.5 * np.einsum("ki,ij,kj->k", xs, q.Omega, xs)) if self.kind == "full" else 1.0
            for t in self.to_reduced().terms:
                b, d = q.coherent_exponent(t.label)
                out += t.coef * t.poly(xs) * np.exp(xs @ b + d)
            out = out * vac
        return out[0] if single else out

    # inner products ----------------------------------------------------------
    def inner(self, other):
        """``<self, other>``, conjugate-linear in ``self``; full and reduced spans mix freely."""
        if other.quant is not self.quant or (self.kind == "holomorphic") != (other.kind == "holomorphic"):
            raise ValueError("spans live in different representations")
        if self.kind == "holomorphic":
            return _holo_inner(self.quant, self.terms, other.terms)
        return _schrodinger_inner(self.quant, self.to_reduced().terms, other.to_reduced().terms)

    def norm(self):
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    def gram(self):
        """Gram matrix of the individual terms (as separate states)."""
        k = len(self.terms)
        Gm = np.zeros((k, k), dtype=complex)
        for a in range(k):
            for b in range(a, k):
                Gm[a, b] = self._like([self.terms[a]]).inner(self._like([self.terms[b]]))
                Gm[b, a] = np.conj(Gm[a, b])
        return Gm


def _poly_arrays(p):
    items = list(p.items())
    exps = np.array([a for a, _ in items], dtype=int).reshape(len(items), p.nvars)
    coefs = np.array([c for _, c in items], dtype=complex)
    return exps, coefs


def _schrodinger_inner(q, terms1, terms2):
    """Sum of ``conj(c1) c2 int conj(p1 k_t1) p2 k_t2 d nu_Q`` over term pairs."""
    S_inv = q.S_inv
    cov = 0.5 * S_inv
    total = 0j
    for t1 in terms1:
        b1, d1 = q.coherent_exponent(t1.label)
        e1, c1 = _poly_arrays(t1.poly)
        for t2 in terms2:
            b2, d2 = q.coherent_exponent(t2.label)
            beta = np.conj(b1) + b2
            log_norm = np.conj(d1) + d2 + 0.25 * beta @ S_inv @ beta
            mean = 0.5 * S_inv @ beta
            e2, c2 = _poly_arrays(t2.poly)
            if e1.shape[0] == 1 and not e1.any() and e2.shape[0] == 1 and not e2.any():
                mom = c1.conj()[0] * c2[0]
            else:
                wick = WickMoments(mean, cov)
                mom = 0j
                for a, ca in zip(e1, c1.conj()):
                    for b, cb in zip(e2, c2):
                        mom += ca * cb * wick(a + b)
            total += np.conj(t1.coef) * t2.coef * np.exp(log_norm) * mom
    return total


def _mode_table(u, v, da, db):
    """``M[a, b] = E[(u + w*)^a (v + w)^b]`` for a standard complex Gaussian ``w``."""
    M = np.zeros((da + 1, db + 1), dtype=complex)
    for a in range(da + 1):
        for b in range(db + 1):
            s = 0j
            for j in range(min(a, b) + 1):
                s += comb(a, j) * comb(b, j) * factorial(j) * u ** (a - j) * v ** (b - j)
            M[a, b] = s
    return M


def _holo_inner(q, terms1, terms2):
    """Closed form of ``int conj(p1(z) e^{conj(a1) z}) p2(z) e^{conj(a2) z} d nu_L``.

    Under the tilted measure ``z`` has mean ``a1`` and ``conj(z)`` has mean
    ``conj(a2)``, and the modes decouple, so monomial moments factor into
    one-dimensional tables.
    """
    total = 0j
    for t1 in terms1:
        a1 = q.z(t1.label)
        e1, c1 = _poly_arrays(t1.poly)
        for t2 in terms2:
            a2 = q.z(t2.label)
            e2, c2 = _poly_arrays(t2.poly)
            norm = np.exp(np.conj(a2) @ a1)
            mom = np.outer(np.conj(c1), c2)
            for k in range(q.n):
                tab = _mode_table(np.conj(a2[k]), a1[k], int(e1[:, k].max()), int(e2[:, k].max()))
                mom = mom * tab[e1[:, k][:, None], e2[:, k][None, :]]
            total += np.conj(t1.coef) * t2.coef * norm * mom.sum()
    return total
