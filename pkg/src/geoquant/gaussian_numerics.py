"""Gaussian measures, Gauss-Hermite grids and Wick moments.

A Gaussian measure here always has density ``Z exp(-(x - c)^T P (x - c))``
with ``Z = pi^{-d/2} det(P)^{1/2}``, so its covariance is ``(2P)^{-1}``.
The quadrature rules are oracles for the closed-form moment calculus, which
is the path used for inner products.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import QuadratureBudgetError

DEFAULT_BUDGET = 10**7
DEFAULT_ORDER = {1: 40, 2: 20, 3: 12}
MC_SEED = 0xC0FFEE


@dataclass(frozen=True, eq=False)
class GaussianMeasure:
    """Probability measure ``Z exp(-(x-c)^T P (x-c)) dx`` on ``R^d``."""

    P: np.ndarray
    center: np.ndarray | None = None

    def __post_init__(self):
        P = np.atleast_2d(np.array(self.P, dtype=float))
        P = 0.5 * (P + P.T)
        if np.linalg.eigvalsh(P).min() <= 0:
            raise ValueError("precision matrix must be positive definite")
        c = np.zeros(P.shape[0]) if self.center is None else np.array(self.center, dtype=float)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "center", c)

    @property
    def dim(self):
        return self.P.shape[0]

    @property
    def normalization(self):
        return np.pi ** (-self.dim / 2) * np.sqrt(np.linalg.det(self.P))

    @property
    def covariance(self):
        return 0.5 * np.linalg.inv(self.P)

    def density(self, x):
        x = np.atleast_2d(x) - self.center
        return self.normalization * np.exp(-np.einsum("ki,ij,kj->k", x, self.P, x))


def default_order(d):
    return DEFAULT_ORDER.get(d, 8)


@lru_cache(maxsize=64)
def _hermgauss(order):
    x, w = np.polynomial.hermite.hermgauss(order)
    return x, w / np.sqrt(np.pi)


def gauss_hermite_grid(measure, order=None, budget=DEFAULT_BUDGET):
    """Tensor Gauss-Hermite nodes and weights for ``measure``.

    Returns ``(nodes, weights)`` with ``nodes`` of shape ``(order^d, d)``.
    The rule is exact for polynomials of total degree ``<= 2*order - 1``.
    """
    d = measure.dim
    order = default_order(d) if order is None else int(order)
    if order < 1:
        raise ValueError("quadrature order must be at least 1")
    if d * order**d > budget:
        raise QuadratureBudgetError(f"{order}^{d} nodes in dimension {d} exceed the budget {budget}")
    x, w = _hermgauss(order)
    grid = np.array(list(product(x, repeat=d)))
    wts = np.prod(np.array(list(product(w, repeat=d))), axis=1)
    # x = L^{-T} y with P = L L^T turns exp(-|y|^2) into exp(-x^T P x).
    L = np.linalg.cholesky(measure.P)
    nodes = np.linalg.solve(L.T, grid.T).T + measure.center
    return nodes, wts


def integrate(f, measure, order=None, budget=DEFAULT_BUDGET):
    """``int f d(measure)`` by Gauss-Hermite; ``f`` maps an ``(k, d)`` batch to ``(k,)``."""
    nodes, wts = gauss_hermite_grid(measure, order, budget)
    vals = np.asarray(f(nodes))
    return np.sum(wts * vals)


def integrate_lebesgue(f, P, center=None, order=None, budget=DEFAULT_BUDGET):
    """``int f(x) dx`` for an integrand decaying like ``exp(-(x-c)^T P (x-c))``."""
    m = GaussianMeasure(P, center)
    nodes, wts = gauss_hermite_grid(m, order, budget)
    y = nodes - m.center
    vals = np.asarray(f(nodes)) * np.exp(np.einsum("ki,ij,kj->k", y, m.P, y))
    return np.sum(wts * vals) / m.normalization


def integrate_mc(f, measure, samples=200_000, seed=MC_SEED):
    """Seeded Monte Carlo estimate, for dimensions where tensor grids are too large."""
    rng = np.random.default_rng(seed)
    x = rng.multivariate_normal(measure.center, measure.covariance, size=samples)
    return np.mean(np.asarray(f(x)))


class WickMoments:
    """Moments ``E[v^alpha]`` of a (possibly complex-shifted) Gaussian vector.

    ``mean`` may be complex and ``cov`` any symmetric matrix; the values are
    the analytic continuation of the real Gaussian moments, computed by the
    recursion ``E[v_i v^b] = m_i E[v^b] + sum_k C_ik b_k E[v^{b - e_k}]``.
    """

    def __init__(self, mean, cov):
        self.mean = np.asarray(mean)
        self.cov = np.asarray(cov)
        self.d = self.cov.shape[0]
        self._memo = {(0,) * self.d: 1.0}

    def __call__(self, alpha):
        alpha = tuple(int(a) for a in alpha)
        memo = self._memo
        if alpha in memo:
            return memo[alpha]
        # Iterative over the multi-index degree to keep recursion shallow.
        stack = [alpha]
        while stack:
            a = stack[-1]
            if a in memo:
                stack.pop()
                continue
            i = next(k for k, ak in enumerate(a) if ak)
            b = list(a)
            b[i] -= 1
            b = tuple(b)
            deps = [b] + [
                tuple(bj - (j == k) for j, bj in enumerate(b)) for k in range(self.d) if b[k] and self.cov[i, k] != 0
            ]
            missing = [x for x in deps if x not in memo]
            if missing:
                stack.extend(missing)
                continue
            val = self.mean[i] * memo[b]
            for k in range(self.d):
                if b[k] and self.cov[i, k] != 0:
                    bk = tuple(bj - (j == k) for j, bj in enumerate(b))
                    val = val + self.cov[i, k] * b[k] * memo[bk]
            memo[a] = val
            stack.pop()
        return memo[alpha]


def gaussian_moment(P, alpha):
    """Exact ``int x^alpha d nu`` for the centered Gaussian with precision ``P``."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    if sum(alpha) % 2:
        return 0.0
    return float(np.real(WickMoments(np.zeros(P.shape[0]), 0.5 * np.linalg.inv(P))(alpha)))
