import numpy as np
import pytest

from geoquant.correspondence import VacuumForm
from geoquant.gaussian_numerics import integrate_lebesgue
from geoquant.polynomial import Polynomial
from geoquant.random_instances import random_complex_structure, random_phase_space, random_span
from geoquant.schrodinger_rep import (
    coherent_from_sigma_lambda,
    coherent_wavefunction,
    degree_one_target,
    density_probe,
    inner_product,
    label_from_sigma_lambda,
    plane_wave_labels,
    sample_grid,
    sigma_lambda_from_label,
    vacuum_wavefunction,
    write_samples_csv,
)
from geoquant.spans import CoherentSpan, Quantization


def test_vacuum_examples():
    one = VacuumForm([[1.0]], [[0.0]])
    assert vacuum_wavefunction(one, [0.0]) == pytest.approx(1.0)
    assert vacuum_wavefunction(one, [1.0]) == pytest.approx(np.exp(-0.5))
    assert vacuum_wavefunction(np.array([[1 - 1j]]), [1.0]) == pytest.approx(np.exp(-0.5 + 0.5j))


def test_reduced_coherent_examples(q0):
    assert coherent_wavefunction(q0, [0, 0], [0.7]) == pytest.approx(1.0)
    assert coherent_wavefunction(q0, [1, 0], [0.0]) == pytest.approx(np.exp(-0.5))
    assert coherent_wavefunction(q0, [1, 2], [1.0]) == pytest.approx(np.exp(0.5 + 1j))


def test_sigma_lambda_examples(q0, e1):
    om = q0.omega
    assert coherent_from_sigma_lambda(om, [0], [0], [0.4]) == pytest.approx(1.0)
    assert coherent_from_sigma_lambda(om, [1], [2], [1.0]) == pytest.approx(np.exp(0.5 + 1j))
    assert coherent_from_sigma_lambda(om, [1], [0], [1.0]) == pytest.approx(np.exp(0.5))
    assert np.allclose(label_from_sigma_lambda(e1, [1], [2]), [1, 2])


def test_sigma_lambda_matches_label(rng):
    for n in (1, 3):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        tau = rng.normal(size=2 * n)
        sigma, lam = sigma_lambda_from_label(ps, tau)
        assert np.allclose(label_from_sigma_lambda(ps, sigma, lam), tau)
        for _ in range(5):
            phi = rng.normal(size=n)
            assert coherent_from_sigma_lambda(q.omega, sigma, lam, phi) == pytest.approx(
                coherent_wavefunction(q, tau, phi), rel=1e-12)


def test_factorization(rng):
    ps = random_phase_space(2, rng)
    q = Quantization(ps, J=random_complex_structure(ps, rng))
    for _ in range(100):
        tau = rng.normal(size=4)
        phi = rng.normal(size=2)
        full = coherent_wavefunction(q, tau, phi, "full")
        red = coherent_wavefunction(q, tau, phi)
        want = np.exp(0.25 * q.g(tau, tau)) * red * vacuum_wavefunction(q.omega, phi)
        assert abs(full - want) <= 1e-12 * max(1.0, abs(want))
    with pytest.raises(ValueError):
        coherent_wavefunction(q, tau, phi, "weird")


def test_inner_product_examples(q0):
    K = lambda tau, kind="full": CoherentSpan.coherent(q0, kind, np.asarray(tau, float))
    assert inner_product(K([0, 0]), K([0, 0])) == pytest.approx(1.0)
    assert inner_product(K([1, 0]), K([0, 1])) == pytest.approx(np.exp(0.5j))
    assert inner_product(K([1, 2], "reduced"), K([1, 2], "reduced")) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        inner_product(K([0, 0]), CoherentSpan.coherent(q0, "holomorphic", np.zeros(2)))


def test_inner_product_quadrature(rng):
    """Closed form versus quadrature of conj(a) b against mu_Q."""
    for n in (1, 2):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        S = q.omega.S
        norm = np.pi ** (-n / 2) * np.sqrt(np.linalg.det(S))
        for _ in range(5):
            a = random_span(q, "full", rng, terms=2, degree=2, scale=0.5)
            b = random_span(q, "reduced", rng, terms=2, degree=1, scale=0.5)
            quad = integrate_lebesgue(lambda x: np.conj(a(x)) * b.to_full()(x) * norm, S,
                                      order=40 if n == 1 else 20)
            assert inner_product(a, b) == pytest.approx(quad, rel=1e-8, abs=1e-8)


def test_sesquilinear_and_gram(q0, rng):
    a = random_span(q0, "reduced", rng)
    b = random_span(q0, "reduced", rng)
    assert inner_product(a * 2j, b) == pytest.approx(-2j * inner_product(a, b))
    assert inner_product(b, a) == pytest.approx(np.conj(inner_product(a, b)))
    G = a.gram()
    assert np.allclose(G, G.conj().T)
    assert np.linalg.eigvalsh(G).min() > 0


def test_density_probe(q0):
    target = degree_one_target(q0)
    labels = plane_wave_labels(q0.ps, 8)
    res = density_probe(q0, target, labels).residuals
    assert res[0] == pytest.approx(target.norm())
    assert np.all(np.diff(res) < 0)
    # a coherent state on the grid is reproduced exactly once its label is in
    grid = np.array([[0.5, 0.0], [0.0, 0.5], [0.3, 0.3]])
    hit = CoherentSpan.coherent(q0, "reduced", grid[1])
    r = density_probe(q0, hit, grid).residuals
    assert r[2] == pytest.approx(0.0, abs=1e-7)


def test_density_probe_regularizes(q0):
    labels = np.array([[0.0, 0.5], [0.0, 0.5 + 1e-9]])
    out = density_probe(q0, degree_one_target(q0), labels)
    assert out.regularized


def test_samples_csv(q0, tmp_path):
    span = CoherentSpan.coherent(q0, "full", np.array([0.2, 0.1]), poly=Polynomial.linear([1.0]))
    path = tmp_path / "s.csv"
    grid = sample_grid(1, -1, 1, 5)
    write_samples_csv(path, span, grid)
    rows = path.read_text().splitlines()
    assert rows[0] == "phi_1,re,im"
    assert len(rows) == 6
    x, re, im = map(float, rows[3].split(","))
    assert complex(re, im) == pytest.approx(span(np.array([x])))
