"""Property check suites shared by the command line and the acceptance tests.

Every suite yields :class:`CheckReport` records; a report passes when its
``max_error`` does not exceed its ``tolerance``.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from . import affine as af
from .bargmann import (
    kernel,
    kernel_via_coordinates,
    pairing,
    pairing_quadrature,
    transform,
    transform_quadrature,
)
from .correspondence import complex_structure_defects, j_from_omega, omega_from_j, reference_complex_structure
from .field_models import build_lattice, two_point, two_point_mode_sum, vacuum_form
from .holomorphic_rep import normalized_coherent_span, reproduce
from .observables import (
    commutator_defect,
    configuration_observable,
    exp_creation_on_vacuum,
    intertwine_defect,
    observable,
)
from .phase_space import build_phase_space
from .polynomial import Polynomial
from .random_instances import (
    as_rng,
    random_complex_structure,
    random_covector,
    random_label,
    random_phase_space,
    random_polynomial,
    random_span,
    random_vacuum_form,
)
from .schrodinger_rep import degree_one_target, density_probe, plane_wave_labels
from .spans import CoherentSpan, Quantization, Term

E1_BRACKET = np.array([[0.0, 0.0], [1.0, 0.0]])


@dataclass
class CheckReport:
    check: str
    passed: bool
    max_error: float
    tolerance: float
    runtime_ms: float

    def to_json(self):
        def r(x):
            return float(f"{x:.15g}")

        return json.dumps(
            {
                "check": self.check,
                "passed": bool(self.passed),
                "max_error": r(self.max_error),
                "tolerance": r(self.tolerance),
                "runtime_ms": r(self.runtime_ms),
            }
        )


def timed(name, tolerance, fn, *args, **kwargs):
    t0 = time.perf_counter()
    err = float(fn(*args, **kwargs))
    ms = 1e3 * (time.perf_counter() - t0)
    return CheckReport(name, bool(err <= tolerance), err, tolerance, ms)


def e1_quantization():
    ps = build_phase_space(E1_BRACKET)
    return Quantization(ps, J=reference_complex_structure(ps))


def random_quantization(n, rng):
    ps = random_phase_space(n, rng)
    return Quantization(ps, J=random_complex_structure(ps, rng))


def _rel(a, b, scale=1.0):
    return abs(a - b) / max(scale, 1e-300)


# 1-2: correspondence -----------------------------------------------------------

def roundtrip_error(n, rng):
    """Worst entrywise error of J -> Omega -> J and Omega -> J -> Omega."""
    ps = random_phase_space(n, rng)
    J = random_complex_structure(ps, rng)
    e1 = np.abs(j_from_omega(ps, omega_from_j(ps, J)).J - J.J).max()
    om = random_vacuum_form(n, rng)
    back = omega_from_j(ps, j_from_omega(ps, om))
    e2 = max(np.abs(back.S - om.S).max(), np.abs(back.A - om.A).max())
    return max(e1, e2)


def roundtrip_suite(dim, trials, seed):
    rng = as_rng(seed)
    return [timed(f"roundtrip[{i}]", 1e-9, roundtrip_error, dim // 2, rng) for i in range(trials)]


def invariants_error(n, rng):
    """Defects of ``J^2 = -1`` and ``J^T W J = W`` on a ``j_from_omega`` output; a
    non-positive metric counts as an infinite error."""
    ps = random_phase_space(n, rng)
    J = j_from_omega(ps, random_vacuum_form(n, rng))
    d = complex_structure_defects(ps, J)
    if d["metric_min_eig"] <= 0:
        return np.inf
    return max(d["square"], d["symplectic"])


# 3-5: Segal-Bargmann -------------------------------------------------------------

def isometry_error(quant, rng, degree=1):
    a = random_span(quant, "reduced", rng, terms=3, degree=degree)
    b = random_span(quant, "reduced", rng, terms=3, degree=degree)
    lhs = transform(a).inner(transform(b))
    rhs = a.inner(b)
    return _rel(lhs, rhs, a.norm() * b.norm())


def transform_quadrature_error(quant, rng, points=5):
    psi = random_span(quant, "reduced", rng, terms=2, degree=1, scale=0.5)
    full = psi.to_full()
    xi = np.array([random_label(quant.ps, rng, 0.5) for _ in range(points)])
    quad = transform_quadrature(quant, full, xi)
    exact = transform(psi)(xi)
    return np.max(np.abs(quad - exact)) / max(1.0, np.max(np.abs(exact)))


def pairing_quadrature_error(quant, rng):
    h = random_span(quant, "holomorphic", rng, terms=2, degree=1, scale=0.5)
    s = random_span(quant, "reduced", rng, terms=2, degree=1, scale=0.5)
    return _rel(pairing_quadrature(h, s), pairing(h, s), h.norm() * s.norm())


def bargmann_suite(dim, trials, seed):
    rng = as_rng(seed)
    n = dim // 2
    out = []
    for i in range(trials):
        quant = random_quantization(n, rng)
        out.append(timed(f"bargmann.isometry[{i}]", 1e-12, isometry_error, quant, rng))
    if n <= 2:
        quant = random_quantization(n, rng)
        out.append(timed("bargmann.transform_quadrature", 1e-6, transform_quadrature_error, quant, rng))
        out.append(timed("bargmann.pairing_quadrature", 1e-6, pairing_quadrature_error, quant, rng))
    out.append(timed("bargmann.coordinate_kernel", 1e-12, coordinate_kernel_error, 100, rng))
    return out


def coordinate_kernel_error(points, rng):
    """Kernel versus its coordinate form on E1 with J0, relative to the kernel value."""
    quant = e1_quantization()
    worst = 0.0
    for _ in range(points):
        xi = rng.normal(size=2)
        phi = rng.normal(size=1)
        k1 = kernel(quant, xi, phi)
        k2 = kernel_via_coordinates(quant, xi, phi)
        worst = max(worst, abs(k1 - k2) / max(1.0, abs(k1)))
    return worst


def reproducing_error(quant, rng):
    psi = random_span(quant, "holomorphic", rng, terms=3, degree=1)
    tau = random_label(quant.ps, rng)
    val = CoherentSpan.coherent(quant, "holomorphic", tau).inner(psi)
    direct = psi(tau)
    reproduce(psi, tau)
    e1 = abs(val - direct) / max(1.0, abs(direct))
    e2 = abs(normalized_coherent_span(quant, tau).norm() - 1.0)
    return max(e1, e2)


# 6-8: observables -----------------------------------------------------------------

def ccr_error(quant, rng):
    F = observable(quant.ps, random_covector(quant.ps, rng))
    G = observable(quant.ps, random_covector(quant.ps, rng))
    worst = 0.0
    for kind in ("full", "reduced", "holomorphic"):
        span = random_span(quant, kind, rng, terms=2, degree=1)
        r = commutator_defect(quant, F, G, span)
        scale = max(1.0, abs(r.expected))
        worst = max(worst, abs(r.constant - r.expected) / scale, r.deviation / scale)
    return worst


def e1_ccr_error():
    """``[q, p] = i`` on E1 with J0, where p is the M-coordinate observable."""
    quant = e1_quantization()
    ps = quant.ps
    qF = configuration_observable(ps, 0)
    pG = observable(ps, np.array([0.0, 1.0]))
    worst = 0.0
    for kind in ("full", "reduced", "holomorphic"):
        span = CoherentSpan.coherent(quant, kind, np.array([0.3, -0.2]), poly=Polynomial.linear([1.0], 0.5))
        r = commutator_defect(quant, qF, pG, span)
        worst = max(worst, abs(r.constant - 1j), r.deviation)
    return worst


def ccr_suite(dim, trials, seed):
    rng = as_rng(seed)
    out = [timed("ccr.e1_q_p", 1e-10, e1_ccr_error)]
    for i in range(trials):
        out.append(timed(f"ccr[{i}]", 1e-10, ccr_error, random_quantization(dim // 2, rng), rng))
    return out


def intertwine_error(quant, rng):
    F = observable(quant.ps, random_covector(quant.ps, rng))
    span = random_span(quant, "reduced", rng, terms=2, degree=1)
    return intertwine_defect(quant, F, span)


def intertwine_suite(dim, trials, seed):
    rng = as_rng(seed)
    return [
        timed(f"intertwine[{i}]", 1e-9, intertwine_error, random_quantization(dim // 2, rng), rng)
        for i in range(trials)
    ]


def exp_creation_error(quant, rng):
    F = observable(quant.ps, random_covector(quant.ps, rng, scale=0.7))
    return 1.0 - exp_creation_on_vacuum(quant, F).fidelity


# 9: affine --------------------------------------------------------------------------

def random_affine(ps, rng, theta0=True):
    # c o p_N annihilates M, as an adapted potential must
    t0 = rng.normal(size=ps.dim) @ ps.proj_N if theta0 else None
    return af.affine_space(ps, t0)


def random_affine_span(aff, quant, kind, rng, terms=2, degree=1, scale=0.7):
    base = rng.normal(size=aff.ps.dim) * scale
    items = [
        Term(complex(rng.normal(), rng.normal()), base + rng.normal(size=aff.ps.dim) * scale,
             random_polynomial(quant.n, rng, degree) if degree else Polynomial.constant(quant.n))
        for _ in range(terms)
    ]
    return af.AffineSpan(aff, quant, kind, base, items)


def base_change_error(aff, quant, rng):
    worst = 0.0
    for kind in af.AFFINE_KINDS:
        a = random_affine_span(aff, quant, kind, rng)
        b = random_affine_span(aff, quant, kind, rng).rebase(a.base)
        e1, e2 = rng.normal(size=aff.ps.dim), rng.normal(size=aff.ps.dim)
        scale = a.norm() * b.norm()
        before = a.inner(b)
        after = a.rebase(e1).inner(b.rebase(e1))
        worst = max(worst, abs(before - after) / scale)
        # composition: (eta -> e1 -> e2) equals (eta -> e2)
        two = a.rebase(e1).rebase(e2)
        one = a.rebase(e2)
        for t2, t1 in zip(two.terms, one.terms):
            worst = max(worst, abs(t2.coef - t1.coef))
            worst = max(worst, max((abs(c2 - t1.poly.coefficient(al)) for al, c2 in t2.poly.items()), default=0.0))
    return worst


def affine_transform_error(aff, quant, rng):
    a = random_affine_span(aff, quant, "schrodinger", rng)
    b = random_affine_span(aff, quant, "schrodinger", rng).rebase(a.base)
    lhs = af.transform_affine(a).inner(af.transform_affine(b))
    return abs(lhs - a.inner(b)) / (a.norm() * b.norm())


def affine_intertwine_error(aff, quant, rng):
    F = af.affine_observable(aff.ps, random_covector(aff.ps, rng), value=rng.normal())
    psi = random_affine_span(aff, quant, "schrodinger", rng)
    lhs = af.transform_affine(af.apply_affine_observable(F, psi))
    rhs = af.apply_affine_observable(F, af.transform_affine(psi))
    d = (lhs - rhs).to_linear().simplify()
    return d.norm() / psi.norm()


def affine_quadrature_error(rng):
    quant = e1_quantization()
    aff = random_affine(quant.ps, rng)
    h = af.AffineSpan.coherent(aff, quant, "holomorphic", rng.normal(size=2) * 0.5)
    s = af.AffineSpan.coherent(aff, quant, "schrodinger", rng.normal(size=2) * 0.5)
    return abs(af.pairing_affine_quadrature(h, s) - af.pairing_affine(h, s))


def linear_reduction_error(quant, rng, points=10):
    """With ``theta0 = 0`` the affine formulas reduce to the linear ones."""
    aff = af.affine_space(quant.ps)
    zero = np.zeros(quant.ps.dim)
    worst = 0.0
    zeta = rng.normal(size=quant.ps.dim) * 0.7
    eta = rng.normal(size=quant.ps.dim) * 0.7
    ratios_s, ratios_h = [], []
    for _ in range(points):
        phi = rng.normal(size=quant.n)
        xi = rng.normal(size=quant.ps.dim)
        vac = CoherentSpan.coherent(quant, "full", zero)(phi)
        worst = max(worst, abs(af.affine_coherent_s(aff, quant, zero, phi) - vac))
        lin_s = CoherentSpan.coherent(quant, "full", zeta)(phi) * np.exp(-0.25 * quant.g(zeta, zeta))
        ratios_s.append(af.affine_coherent_s(aff, quant, zeta, phi) / lin_s)
        lin_h = normalized_coherent_span(quant, eta)(xi) * af.alpha_eta(aff, quant, zero, xi)
        ratios_h.append(af.affine_coherent_h(aff, quant, eta, xi) / lin_h)
    for r in (np.array(ratios_s), np.array(ratios_h)):
        worst = max(worst, np.abs(r - r[0]).max(), abs(abs(r[0]) - 1.0))
    return worst


def affine_suite(dim, trials, seed):
    rng = as_rng(seed)
    n = dim // 2
    out = []
    for i in range(trials):
        quant = random_quantization(n, rng)
        aff = random_affine(quant.ps, rng)
        out.append(timed(f"affine.base_change[{i}]", 1e-12, base_change_error, aff, quant, rng))
        out.append(timed(f"affine.transform_isometry[{i}]", 1e-12, affine_transform_error, aff, quant, rng))
        out.append(timed(f"affine.intertwine[{i}]", 1e-9, affine_intertwine_error, aff, quant, rng))
        out.append(timed(f"affine.linear_reduction[{i}]", 1e-12, linear_reduction_error, quant, rng))
    out.append(timed("affine.pairing_quadrature", 1e-6, affine_quadrature_error, rng))
    return out


# 10: lattice --------------------------------------------------------------------------

def lattice_error(N, m, a):
    model = build_lattice(N, m, a)
    v = vacuum_form(model)
    o = omega_from_j(model.ps, model.J)
    e1 = max(np.abs(v.S - o.S).max(), np.abs(v.A - o.A).max())
    e2 = np.abs(two_point(model, v) - two_point_mode_sum(model)).max()
    return max(e1, e2)


# 11: density probe ----------------------------------------------------------------------

DENSITY_DEMO = {"count": 12, "spacing": 0.5}


def density_probe_demo(count=DENSITY_DEMO["count"], spacing=DENSITY_DEMO["spacing"]):
    quant = e1_quantization()
    labels = plane_wave_labels(quant.ps, count, spacing)
    return density_probe(quant, degree_one_target(quant), labels)


def monotonicity_violation(residuals):
    d = np.diff(np.asarray(residuals))
    return float(max(d.max(initial=0.0), 0.0))
