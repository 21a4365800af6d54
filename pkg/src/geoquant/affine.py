"""Affine phase spaces and their coherent states.

Points of the affine space A are stored as displacement vectors from a fixed
anchor. The potential is ``theta(eta, tau) = theta0 . tau + [eta, tau]``, so
equivariance ``theta(eta + xi, tau) = theta(eta, tau) + [xi, tau]`` holds by
construction. ``theta0`` must vanish on M (the potential is adapted), which
makes ``theta(eta, .)`` a function on Q. Points of ``C = A / M`` are Q-vectors
measured from ``c(anchor)``.

A state is stored relative to a base point ``eta`` as a frame function
(the eta-reduced wave function on Q, or the holomorphic factor on L) built
from terms ``c * p(x) * Khat_zeta`` where ``x`` is the frame variable. In a
frame the affine coherent state labelled ``zeta`` equals
``exp(i chi) k_tau`` (Schrödinger) or ``exp(i chi) Ktilde_tau`` (holomorphic)
with ``tau = zeta - eta`` and ``chi = -theta(eta, tau) - [tau, tau] / 2``,
so all inner products and observable actions reuse the linear machinery.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bargmann import inverse_transform, transform
from .gaussian_numerics import DEFAULT_BUDGET, integrate_lebesgue
from .observables import apply, hamiltonian_vector
from .polynomial import Polynomial
from .spans import DEFAULT_CAP, CoherentSpan, Term

AFFINE_KINDS = ("schrodinger", "holomorphic")


@dataclass(frozen=True, eq=False)
class AffineSpace:
    ps: object
    theta0: np.ndarray

    def __post_init__(self):
        t0 = np.zeros(self.ps.dim) if self.theta0 is None else np.array(self.theta0, dtype=float)
        if t0.shape != (self.ps.dim,):
            raise ValueError(f"theta0 must have length {self.ps.dim}")
        if np.abs(t0 @ self.ps.basisM).max() > 1e-12 * max(1.0, np.abs(t0).max()):
            raise ValueError("theta0 must vanish on M")
        object.__setattr__(self, "theta0", t0)

    @property
    def anchor(self):
        return np.zeros(self.ps.dim)

    def theta(self, eta, tau):
        eta = np.asarray(eta, dtype=float)
        tau = np.asarray(tau, dtype=float)
        return self.theta0 @ tau + eta @ self.ps.T @ tau

    def theta_q(self, eta, phi):
        """``theta(eta, .)`` on a Q-vector (well defined because it vanishes on M)."""
        return self.theta(eta, self.ps.lift(phi))

    def c(self, zeta):
        return np.asarray(zeta, dtype=float) @ self.ps.quotient_matrix.T


def affine_space(ps, theta0=None):
    return AffineSpace(ps, theta0)


def chi(aff, eta, zeta):
    tau = np.asarray(zeta, dtype=float) - np.asarray(eta, dtype=float)
    return -aff.theta(eta, tau) - 0.5 * (tau @ aff.ps.T @ tau)


def alpha_eta(aff, quant, eta, zeta):
    """``alpha^eta(zeta) = exp(i theta(eta, d)/2 + i theta(zeta, d)/2 - g(d, d)/4)``, ``d = zeta - eta``."""
    eta = np.asarray(eta, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    d = zeta - eta
    return np.exp(0.5j * aff.theta(eta, d) + 0.5j * aff.theta(zeta, d) - 0.25 * quant.g(d, d))


def affine_coherent_h(aff, quant, eta, zeta):
    """Holomorphic wave function of the affine coherent state of ``eta``, at ``zeta``."""
    return alpha_eta(aff, quant, eta, zeta)


def affine_coherent_s(aff, quant, zeta, phi):
    """``exp(i theta(zeta, phi - c(zeta)) - Omega(phi - c(zeta), phi - c(zeta)) / 2)`` for ``phi`` in C."""
    x = np.asarray(phi, dtype=float) - aff.c(zeta)
    return np.exp(1j * aff.theta_q(zeta, x) - 0.5 * x @ quant.Omega @ x)


def base_change_factor(aff, quant, eta, eta2, phi):
    """``beta_{eta, eta'}(phi)``: the eta'-reduced wave function of the coherent state of ``eta``."""
    eta = np.asarray(eta, dtype=float)
    delta = np.asarray(eta2, dtype=float) - eta
    qd = quant.q(delta)
    phi = np.asarray(phi, dtype=float)
    return np.exp(
        1j * aff.theta(eta, delta)
        - 0.5 * qd @ quant.Omega @ qd
        - 1j * (delta @ aff.ps.T @ aff.ps.lift(phi))
        - qd @ quant.Omega @ phi
    )


class AffineSpan:
    """A state written relative to the base point ``base``."""

    def __init__(self, aff, quant, kind, base, terms=(), cap=DEFAULT_CAP):
        if kind not in AFFINE_KINDS:
            raise ValueError(f"unknown affine representation {kind!r}")
        self.aff = aff
        self.quant = quant
        self.kind = kind
        self.base = np.array(base, dtype=float)
        self.cap = cap
        self.terms = tuple(t if isinstance(t, Term) else Term(*t) for t in terms)

    @classmethod
    def coherent(cls, aff, quant, kind, zeta, base=None, coef=1.0, cap=DEFAULT_CAP):
        base = np.asarray(zeta, dtype=float) if base is None else base
        return cls(aff, quant, kind, base, [Term(coef, np.asarray(zeta, dtype=float), Polynomial.constant(quant.n))], cap)

    def _linear_kind(self):
        return "reduced" if self.kind == "schrodinger" else "holomorphic"

    def _core_factor(self, zeta):
        tau = zeta - self.base
        f = np.exp(1j * chi(self.aff, self.base, zeta))
        if self.kind == "holomorphic":
            f *= np.exp(-0.25 * self.quant.g(tau, tau))
        return f

    def to_linear(self):
        """The frame function as a linear span (reduced or holomorphic)."""
        terms = [Term(t.coef * self._core_factor(t.label), t.label - self.base, t.poly) for t in self.terms]
        return CoherentSpan(self.quant, self._linear_kind(), terms, self.cap)

    def from_linear(self, span, kind=None):
        kind = self.kind if kind is None else kind
        out = AffineSpan(self.aff, self.quant, kind, self.base, (), span.cap)
        terms = []
        for t in span.to_reduced().terms if span.kind == "full" else span.terms:
            zeta = t.label + self.base
            terms.append(Term(t.coef / out._core_factor(zeta), zeta, t.poly))
        out.terms = tuple(terms)
        return out

    def frame_value(self, x):
        return self.to_linear()(x)

    def __call__(self, point):
        """Full wave function: at a C-point (Schrödinger) or an A-point (holomorphic)."""
        point = np.asarray(point, dtype=float)
        if self.kind == "schrodinger":
            x = point - self.aff.c(self.base)
            return self.to_linear()(x) * affine_coherent_s(self.aff, self.quant, self.base, point)
        return self.to_linear()(point - self.base) * alpha_eta(self.aff, self.quant, self.base, point)

    def rebase(self, base2):
        """Same state written relative to ``base2`` (prefactors are shifted)."""
        base2 = np.asarray(base2, dtype=float)
        delta = base2 - self.base
        mu = self.quant.q(delta) if self.kind == "schrodinger" else self.quant.z(delta)
        terms = [Term(t.coef, t.label, t.poly.shift(mu)) for t in self.terms]
        return AffineSpan(self.aff, self.quant, self.kind, base2, terms, self.cap)

    def inner(self, other):
        if other.kind != self.kind:
            raise ValueError("spans live in different representations")
        if not np.array_equal(other.base, self.base):
            other = other.rebase(self.base)
        return self.to_linear().inner(other.to_linear())

    def norm(self):
        return float(np.sqrt(max(self.inner(self).real, 0.0)))

    def __add__(self, other):
        if not np.array_equal(other.base, self.base):
            other = other.rebase(self.base)
        return AffineSpan(self.aff, self.quant, self.kind, self.base, self.terms + other.terms, max(self.cap, other.cap))

    def __mul__(self, c):
        return AffineSpan(self.aff, self.quant, self.kind, self.base, [Term(t.coef * c, t.label, t.poly) for t in self.terms], self.cap)

    __rmul__ = __mul__

    def __sub__(self, other):
        return self + other * -1.0

    def simplified_norm(self):
        return self.to_linear().simplify().norm()


def conjugate_state(span, base2):
    return span.rebase(base2)


def transform_affine(span):
    """Schrödinger to holomorphic, label by label, in the span's own frame."""
    if span.kind != "schrodinger":
        raise ValueError("transform_affine expects a Schrödinger span")
    return span.from_linear(transform(span.to_linear()), kind="holomorphic")


def inverse_transform_affine(span):
    if span.kind != "holomorphic":
        raise ValueError("inverse_transform_affine expects a holomorphic span")
    return span.from_linear(inverse_transform(span.to_linear(), kind="reduced"), kind="schrodinger")


@dataclass(frozen=True)
class AffineObservable:
    """``F(anchor + d) = value + f . d``."""

    value: float
    f: np.ndarray
    X: np.ndarray

    def __call__(self, point):
        return self.value + np.asarray(point) @ self.f


def affine_observable(ps, f, value=0.0):
    f = np.asarray(f, dtype=float)
    return AffineObservable(value, f, hamiltonian_vector(ps, f))


def apply_affine_observable(F, span):
    """In a frame at ``eta`` the action is ``F(eta) psi`` plus the linear action of ``f``."""
    lin = span.to_linear()
    out = apply(span.quant, F.f, lin) + lin * F(span.base)
    return span.from_linear(out)


def pairing_affine(hspan, sspan):
    """Closed form ``<eta, B psi>``."""
    return hspan.inner(transform_affine(sspan))


def pairing_affine_quadrature(hspan, sspan, order=None, budget=DEFAULT_BUDGET):
    """``int conj(eta(zeta)) psi(c(zeta)) d mu_A(zeta)``, ``mu_A`` normalized like ``mu_L``."""
    q = hspan.quant
    aff = hspan.aff
    Pq = q.ps.quotient_matrix
    P = 0.25 * q.G + 0.5 * Pq.T @ q.omega.S @ Pq
    center = np.mean([t.label for t in hspan.terms + sspan.terms], axis=0)
    norm = np.pi ** (-q.n) * np.sqrt(np.linalg.det(q.G / 2.0))

    def f(x):
        return np.array([np.conj(hspan(p)) * sspan(aff.c(p)) for p in x]) * norm

    if order is None:
        order = {1: 40, 2: 20}.get(q.n)
    return integrate_lebesgue(f, P, center=center, order=order, budget=budget)
