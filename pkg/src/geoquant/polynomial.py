"""Sparse multivariate polynomials with complex coefficients.

Used as the prefactors multiplying coherent-state exponentials. A polynomial
is a mapping from exponent tuples to coefficients; instances are immutable.
"""
from __future__ import annotations

from itertools import product
from math import comb

import numpy as np


class Polynomial:
    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.nvars:
                raise ValueError(f"exponent {alpha} does not match {self.nvars} variables")
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        self._terms = {a: c for a, c in clean.items() if c != 0}

    @classmethod
    def _raw(cls, nvars, terms):
        """Build from a dict whose keys are already validated int tuples."""
        out = cls.__new__(cls)
        out.nvars = nvars
        out._terms = {a: c for a, c in terms.items() if c != 0}
        return out

    @classmethod
    def constant(cls, nvars, value=1.0):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def linear(cls, coeffs, const=0.0):
        """The affine function ``const + coeffs . x``."""
        coeffs = np.asarray(coeffs)
        n = coeffs.shape[0]
        terms = {(0,) * n: const}
        for k in range(n):
            e = [0] * n
            e[k] = 1
            terms[tuple(e)] = coeffs[k]
        return cls(n, terms)

    @classmethod
    def monomial(cls, alpha, coef=1.0):
        return cls(len(alpha), {tuple(alpha): coef})

    def items(self):
        return self._terms.items()

    def coefficient(self, alpha):
        return self._terms.get(tuple(alpha), 0j)

    @property
    def degree(self):
        if not self._terms:
            return -1
        return max(sum(a) for a in self._terms)

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        body = " + ".join(f"({c:.6g})*x^{a}" for a, c in sorted(self._terms.items()))
        return f"Polynomial({self.nvars}, {body or '0'})"

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError("polynomials over different numbers of variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        self._check(other)
        terms = dict(self._terms)
        for a, c in other._terms.items():
            terms[a] = terms.get(a, 0) + c
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = complex(other)
            return Polynomial._raw(self.nvars, {a: c * other for a, c in self._terms.items()})
        self._check(other)
        terms = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                terms[key] = terms.get(key, 0) + c * d
        return Polynomial._raw(self.nvars, terms)

    __rmul__ = __mul__

    def conj(self):
        """Conjugate the coefficients (the complex conjugate on real arguments)."""
        return Polynomial(self.nvars, {a: c.conjugate() for a, c in self._terms.items()})

    def deriv(self, k):
        terms = {}
        for a, c in self._terms.items():
            if a[k]:
                b = list(a)
                b[k] -= 1
                terms[tuple(b)] = terms.get(tuple(b), 0) + a[k] * c
        return Polynomial(self.nvars, terms)

    def directional(self, v):
        """Derivative along the (possibly complex) direction ``v``."""
        out = Polynomial.zero(self.nvars)
        for k, vk in enumerate(np.asarray(v)):
            if vk != 0:
                out = out + self.deriv(k) * vk
        return out

    def shift(self, mu):
        """Return ``x -> p(x + mu)``."""
        mu = np.asarray(mu, dtype=complex)
        terms = {}
        for a, c in self._terms.items():
            ranges = [range(ak + 1) for ak in a]
            for b in product(*ranges):
                w = c
                for ak, bk, m in zip(a, b, mu):
                    if ak != bk:
                        w = w * comb(ak, bk) * m ** (ak - bk)
                terms[b] = terms.get(b, 0) + w
        return Polynomial(self.nvars, terms)

    def __call__(self, x):
        """Evaluate at a point (shape ``(n,)``) or a batch (shape ``(k, n)``)."""
        x = np.asarray(x)
        single = x.ndim == 1
        xs = np.atleast_2d(x)
        if not self._terms:
            out = np.zeros(xs.shape[0], dtype=complex)
        else:
            alphas = np.array(list(self._terms), dtype=int).reshape(len(self._terms), self.nvars)
            coefs = np.array(list(self._terms.values()), dtype=complex)
            # (k, terms): product over variables of x_j ** alpha_j
            step = max(1, 2**20 // (len(coefs) * max(self.nvars, 1)))
            out = np.concatenate([
                np.prod(xs[i:i + step, None, :] ** alphas[None, :, :], axis=2) @ coefs
                for i in range(0, xs.shape[0], step)
            ])
        return out[0] if single else out

    def allclose(self, other, atol=1e-12):
        diff = self - other
        return all(abs(c) <= atol for _, c in diff.items())
