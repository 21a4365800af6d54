import numpy as np
import pytest
from itertools import product

from geoquant.errors import QuadratureBudgetError
from geoquant.gaussian_numerics import (
    GaussianMeasure,
    WickMoments,
    gauss_hermite_grid,
    gaussian_moment,
    integrate,
    integrate_lebesgue,
    integrate_mc,
)


def random_precision(d, rng):
    R = rng.normal(size=(d, d))
    return R @ R.T + 0.5 * np.eye(d)


def test_grid_examples():
    nodes, wts = gauss_hermite_grid(GaussianMeasure([[1.0]]), 1)
    assert nodes.ravel() == pytest.approx([0.0]) and wts == pytest.approx([1.0])
    nodes, wts = gauss_hermite_grid(GaussianMeasure([[1.0]]), 5)
    assert np.sum(wts * nodes[:, 0] ** 2) == pytest.approx(0.5, abs=1e-12)
    nodes, wts = gauss_hermite_grid(GaussianMeasure(np.eye(2)), 10)
    assert np.sum(wts * nodes[:, 0] ** 2 * nodes[:, 1] ** 2) == pytest.approx(0.25, abs=1e-10)


def test_weights_and_exactness(rng):
    for d in (1, 2, 3):
        P = random_precision(d, rng)
        m = GaussianMeasure(P, rng.normal(size=d))
        nodes, wts = gauss_hermite_grid(m, 6)
        assert wts.sum() == pytest.approx(1.0, abs=1e-12)
        # degree 2*6-1 = 11 is exact; compare a shifted moment with Wick
        wm = WickMoments(m.center, m.covariance)
        for alpha in [(3,) * d, tuple(range(d))]:
            if sum(alpha) <= 11:
                quad = np.sum(wts * np.prod(nodes ** np.array(alpha), axis=1))
                assert quad == pytest.approx(wm(alpha), rel=1e-10, abs=1e-10)


def test_budget():
    with pytest.raises(QuadratureBudgetError):
        gauss_hermite_grid(GaussianMeasure(np.eye(4)), 60)
    with pytest.raises(ValueError):
        gauss_hermite_grid(GaussianMeasure(np.eye(1)), 0)


def test_moment_examples():
    assert gaussian_moment([[1.0]], (2,)) == pytest.approx(0.5)
    assert gaussian_moment(np.eye(2), (2, 2)) == pytest.approx(0.25)
    assert gaussian_moment([[3.0, 1.0], [1.0, 2.0]], (2, 1)) == 0.0


def test_moments_match_quadrature(rng):
    for _ in range(20):
        d = int(rng.integers(1, 4))
        P = random_precision(d, rng)
        nodes, wts = gauss_hermite_grid(GaussianMeasure(P), 8)
        for alpha in product(range(4), repeat=d):
            if sum(alpha) > 6:
                continue
            quad = np.sum(wts * np.prod(nodes ** np.array(alpha), axis=1))
            assert gaussian_moment(P, alpha) == pytest.approx(quad, abs=1e-9)


def test_integrate_examples():
    m = GaussianMeasure([[1.0]])
    assert integrate(lambda x: np.ones(len(x)), m) == pytest.approx(1.0)
    assert integrate(lambda x: np.exp(x[:, 0]), m, order=20) == pytest.approx(np.exp(0.25), abs=1e-10)


def test_vacuum_normalized_under_mu_q(q0):
    # d mu_Q = pi^{-1/2} d phi for Re Omega = 1, and |K_0|^2 = exp(-phi^2)
    val = integrate_lebesgue(lambda x: np.pi**-0.5 * np.exp(-x[:, 0] ** 2), [[1.0]])
    assert val == pytest.approx(1.0, abs=1e-10)


def test_total_mass(rng):
    for _ in range(20):
        d = int(rng.integers(1, 4))
        m = GaussianMeasure(random_precision(d, rng))
        assert integrate_lebesgue(m.density, m.P, order=10) == pytest.approx(1.0, abs=1e-10)


def test_monte_carlo_is_seeded():
    m = GaussianMeasure(np.eye(2))
    f = lambda x: x[:, 0] ** 2
    a = integrate_mc(f, m, samples=20000)
    assert a == integrate_mc(f, m, samples=20000)
    assert a == pytest.approx(0.5, abs=0.02)


def test_complex_mean_moments():
    wm = WickMoments(np.array([1j]), np.array([[0.5]]))
    # E[(x + i)^2] for x ~ N(0, 1/2)
    assert wm((2,)) == pytest.approx(0.5 - 1.0)
