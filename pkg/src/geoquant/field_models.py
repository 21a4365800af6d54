"""A periodic 1-d lattice Klein-Gordon field as a finite-dimensional phase space.

Phase-space vectors are ``(phi_1..phi_N, pi_1..pi_N)`` with bracket
``[xi, xi'] = a * sum_x pi_x phi'_x``. The momentum subspace M is the pi
block and Q is identified with the site values of the field. The complex
structure acts mode by mode as ``[[0, 1/omega_k], [-omega_k, 0]]`` in the
real Fourier basis, i.e. ``J = [[0, K^{-1}], [-K, 0]]`` with
``K = sqrt(m^2 - Laplacian)``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .correspondence import ComplexStructure, abcd_from_j, complex_structure, omega_from_abcd
from .gaussian_numerics import gaussian_moment
from .observables import ObservableSpec, observable
from .phase_space import build_phase_space


def real_fourier_basis(N):
    """Orthonormal real Fourier modes as columns, with their wave numbers.

    Column order: k = 0, then (cos, sin) pairs for ``0 < k < N/2``, then
    the alternating mode ``k = N/2`` when ``N`` is even.
    """
    x = np.arange(N)
    cols, ks = [np.full(N, 1.0 / np.sqrt(N))], [0]
    for k in range(1, (N + 1) // 2):
        cols.append(np.sqrt(2.0 / N) * np.cos(2 * np.pi * k * x / N))
        cols.append(np.sqrt(2.0 / N) * np.sin(2 * np.pi * k * x / N))
        ks += [k, k]
    if N % 2 == 0 and N > 1:
        cols.append((-1.0) ** x / np.sqrt(N))
        ks.append(N // 2)
    return np.stack(cols, axis=1), np.array(ks)


def dispersion(k, N, m, a):
    return np.sqrt(m**2 + (2.0 / a * np.sin(np.pi * np.asarray(k) / N)) ** 2)


@dataclass(frozen=True, eq=False)
class LatticeModel:
    sites: int
    mass: float
    spacing: float

    @cached_property
    def modes(self):
        return real_fourier_basis(self.sites)

    @property
    def frequencies(self):
        return dispersion(self.modes[1], self.sites, self.mass, self.spacing)

    @cached_property
    def K(self):
        U, _ = self.modes
        return U @ np.diag(self.frequencies) @ U.T

    @cached_property
    def ps(self):
        N, a = self.sites, self.spacing
        T = np.zeros((2 * N, 2 * N))
        T[N:, :N] = a * np.eye(N)
        ps = build_phase_space(T)
        # Q-coordinates must be the site values of phi.
        if not np.allclose(ps.quotient_matrix, np.hstack([np.eye(N), np.zeros((N, N))])):
            raise RuntimeError("unexpected frame for the lattice configuration space")
        return ps

    @cached_property
    def J(self) -> ComplexStructure:
        N = self.sites
        Jm = np.zeros((2 * N, 2 * N))
        Jm[:N, N:] = np.linalg.inv(self.K)
        Jm[N:, :N] = -self.K
        return complex_structure(self.ps, Jm)


def build_lattice(N, m, a=1.0):
    if int(N) != N or N < 1:
        raise ValueError(f"number of sites must be a positive integer, got {N}")
    if not m > 0 or not a > 0:
        raise ValueError("mass and spacing must be positive")
    return LatticeModel(int(N), float(m), float(a))


def vacuum_form(model):
    """``Omega = B^{-1} - i C B^{-1}`` from the blocks of ``J``."""
    _, B, C, _ = abcd_from_j(model.ps, model.J)
    return omega_from_abcd(model.ps, B, C)


def field_observables(model, f, g):
    """``(phi[f], pi[g])`` with ``phi[f](xi) = a sum f_x phi_x`` and ``pi[g](xi) = a sum g_x pi_x``."""
    N, a = model.sites, model.spacing
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != (N,) or g.shape != (N,):
        raise ValueError(f"site vectors must have length {N}")
    z = np.zeros(N)
    phi_f: ObservableSpec = observable(model.ps, np.concatenate([a * f, z]))
    pi_g: ObservableSpec = observable(model.ps, np.concatenate([z, a * g]))
    return phi_f, pi_g


def two_point(model, omega=None):
    """Vacuum expectation ``<phi_x phi_y>`` = ``(S^{-1})_xy / 2``."""
    om = vacuum_form(model) if omega is None else omega
    return 0.5 * np.linalg.inv(om.S)


def two_point_mode_sum(model):
    """``sum_k u_k(x) u_k(y) / (2 a omega_k)`` over the real Fourier modes."""
    U, _ = model.modes
    return (U / (2.0 * model.spacing * model.frequencies)) @ U.T


def two_point_moment(model, x, y):
    """``<phi_x phi_y>`` as a Gaussian moment of ``|K_0|^2 = exp(-phi S phi)``."""
    S = vacuum_form(model).S
    alpha = [0] * model.sites
    alpha[x] += 1
    alpha[y] += 1
    return gaussian_moment(S, alpha)


def vacuum_profile(model):
    """Diagonal of the two-point function: the vacuum variance at each site."""
    return np.diag(two_point(model))


def write_site_csv(path, values):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["site", "value"])
        for x, v in enumerate(np.asarray(values, dtype=float)):
            w.writerow([x, repr(float(v))])
