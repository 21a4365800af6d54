import numpy as np
import pytest

from geoquant.bargmann import (
    coordinate_kernel,
    inverse_transform,
    inverse_transform_quadrature,
    kernel,
    kernel_via_coordinates,
    pairing,
    pairing_inverse_quadrature,
    pairing_quadrature,
    require_n_equals_jm,
    transform,
    transform_quadrature,
)
from geoquant.correspondence import ComplexStructure
from geoquant.holomorphic_rep import normalized_coherent_span
from geoquant.polynomial import Polynomial
from geoquant.random_instances import random_complex_structure, random_phase_space, random_span
from geoquant.spans import CoherentSpan, Quantization

from conftest import J2


def direct_kernel(q, xi, phi):
    """Term-by-term evaluation of the kernel exponent."""
    ps = q.ps
    jp = q.j @ phi
    jq = q.j @ q.q(xi)
    br = lambda a, b: a @ ps.T @ b
    return np.exp(q.braces(jp, xi) - 0.5j * br(jp, jp) - 0.5 * q.g(jp, jp) + 0.25 * q.g(xi, xi) - 0.5 * q.braces(jq, xi))


def test_kernel_examples(q0):
    assert kernel(q0, [0, 0], [0]) == pytest.approx(1.0)
    assert kernel(q0, [1, 0], [1]) == pytest.approx(np.exp(0.25))
    # third row fixed by direct evaluation: q(xi) = 0 leaves only g(xi, xi)/4
    assert kernel(q0, [0, 1], [0]) == pytest.approx(np.exp(0.25))
    assert direct_kernel(q0, np.array([0.0, 1.0]), np.array([0.0])) == pytest.approx(np.exp(0.25))


def test_kernel_matches_direct_and_coherent(rng):
    for n in (1, 2, 3):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        for _ in range(10):
            xi, phi = rng.normal(size=2 * n), rng.normal(size=n)
            k = kernel(q, xi, phi)
            assert k == pytest.approx(direct_kernel(q, xi, phi), rel=1e-12)
            # conj B(tau, phi) = K^S_tau(phi)
            assert np.conj(k) == pytest.approx(CoherentSpan.coherent(q, "full", xi)(phi), rel=1e-12)
        xs, ps_ = rng.normal(size=(4, 2 * n)), rng.normal(size=(3, n))
        assert kernel(q, xs, ps_).shape == (4, 3)


def test_coordinate_kernel_examples(q0, rng):
    assert coordinate_kernel(1, [0], [0]) == pytest.approx(1.0)
    assert coordinate_kernel(1, [2**-0.5], [1]) == pytest.approx(np.exp(0.25))
    for _ in range(100):
        xi, phi = rng.normal(size=2), rng.normal(size=1)
        assert abs(kernel_via_coordinates(q0, xi, phi) - kernel(q0, xi, phi)) <= 1e-12 * max(1, abs(kernel(q0, xi, phi)))
    with pytest.raises(ValueError):
        coordinate_kernel(2, [0], [0])


def test_coordinate_form_needs_n_equals_jm(e1):
    q = Quantization(e1, J=ComplexStructure(J2))
    with pytest.raises(ValueError):
        require_n_equals_jm(q)


def test_transform_examples(q0):
    vac = CoherentSpan.coherent(q0, "reduced", np.zeros(2))
    out = transform(vac)
    assert out.kind == "holomorphic" and out(np.array([0.3, 0.4])) == pytest.approx(1.0)
    K = transform(CoherentSpan.coherent(q0, "full", np.array([1.0, 0.0])))
    assert len(K.terms) == 1 and np.allclose(K.terms[0].label, [1, 0])
    assert K.terms[0].coef == pytest.approx(1.0) and K.terms[0].poly.degree == 0


def test_reduced_contract(rng):
    ps = random_phase_space(2, rng)
    q = Quantization(ps, J=random_complex_structure(ps, rng))
    for _ in range(50):
        tau = rng.normal(size=4)
        out = transform(CoherentSpan.coherent(q, "reduced", tau))
        want = normalized_coherent_span(q, tau)
        assert len(out.terms) == 1 and np.allclose(out.terms[0].label, tau)
        xi = rng.normal(size=4)
        assert out(xi) == pytest.approx(want(xi), rel=1e-12)


def test_isometry_and_inverse(rng):
    for n in (1, 2, 3, 4):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        for _ in range(5):
            a = random_span(q, "reduced", rng, terms=int(rng.integers(1, 7)), degree=1)
            b = random_span(q, "full", rng, terms=2, degree=2)
            scale = a.norm() * b.norm()
            assert abs(transform(a).inner(transform(b)) - a.inner(b)) <= 1e-12 * scale
            back = inverse_transform(transform(b))
            diff = (back - b).simplify()
            assert diff.norm() <= 1e-12 * b.norm()
            phi = rng.normal(size=n)
            assert back(phi) == pytest.approx(b(phi), rel=1e-10, abs=1e-12)
    with pytest.raises(ValueError):
        transform(CoherentSpan.coherent(q, "holomorphic", np.zeros(2 * n)))
    with pytest.raises(ValueError):
        inverse_transform(CoherentSpan.coherent(q, "full", np.zeros(2 * n)))


def test_quadrature_examples(q0):
    vac = CoherentSpan.coherent(q0, "full", np.zeros(2))
    assert transform_quadrature(q0, vac, [[0.0, 0.0]])[0] == pytest.approx(1.0, abs=1e-8)
    K = CoherentSpan.coherent(q0, "full", np.array([1.0, 0.0]))
    assert transform_quadrature(q0, K, [[1.0, 0.0]])[0] == pytest.approx(np.exp(0.5), abs=1e-6)
    KH = CoherentSpan.coherent(q0, "holomorphic", np.array([1.0, 0.0]))
    # B^{-1} K^H_(1,0) = K^S_(1,0), whose value at 0 is exp(1/4) exp(-1/2)
    assert inverse_transform_quadrature(q0, KH, [[0.0]])[0] == pytest.approx(np.exp(-0.25), abs=1e-6)
    assert K(np.array([0.0])) == pytest.approx(np.exp(-0.25))


def test_quadrature_matches_closed_form(rng):
    for n in (1, 2):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        psi = random_span(q, "reduced", rng, terms=2, degree=1, scale=0.5)
        xi = rng.normal(size=(4, 2 * n)) * 0.5
        exact = transform(psi)(xi)
        assert np.allclose(transform_quadrature(q, psi.to_full(), xi), exact, rtol=1e-6, atol=1e-6)
        eta = transform(psi)
        phi = rng.normal(size=(3, n)) * 0.5
        assert np.allclose(inverse_transform_quadrature(q, eta, phi), psi.to_full()(phi), rtol=1e-6, atol=1e-6)


def test_pairing_examples(q0):
    one = CoherentSpan.coherent(q0, "holomorphic", np.zeros(2))
    vac = CoherentSpan.coherent(q0, "full", np.zeros(2))
    assert pairing_quadrature(one, vac) == pytest.approx(1.0, abs=1e-6)
    Kh = CoherentSpan.coherent(q0, "holomorphic", np.array([0.0, 1.0]))
    Ks = CoherentSpan.coherent(q0, "full", np.array([1.0, 0.0]))
    # <K_(0,1), K_(1,0)> = exp({(1,0), (0,1)}/2) = exp(-i/2)
    want = np.exp(-0.5j)
    assert pairing(Kh, Ks) == pytest.approx(want)
    assert pairing_quadrature(Kh, Ks) == pytest.approx(want, abs=1e-6)
    # the conjugate pairing <psi, B^{-1} psi'> with psi = K^S_(1,0), psi' = K^H_(0,1)
    assert pairing_inverse_quadrature(Ks, Kh) == pytest.approx(np.conj(want), abs=1e-6)


def test_pairing_quadrature_random(rng):
    for n in (1, 2):
        ps = random_phase_space(n, rng)
        q = Quantization(ps, J=random_complex_structure(ps, rng))
        h = random_span(q, "holomorphic", rng, terms=2, degree=1, scale=0.5)
        s = random_span(q, "reduced", rng, terms=2, degree=1, scale=0.5)
        scale = h.norm() * s.norm()
        assert abs(pairing_quadrature(h, s) - pairing(h, s)) <= 1e-6 * scale
        want = s.inner(inverse_transform(h))
        assert abs(pairing_inverse_quadrature(s, h) - want) <= 1e-6 * scale


def test_degree_prefactors_survive(q0):
    psi = CoherentSpan.coherent(q0, "reduced", np.array([0.2, -0.4]), poly=Polynomial.monomial((3,), 1.0))
    assert transform(psi).degree == 3
