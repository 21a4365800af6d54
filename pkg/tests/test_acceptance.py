"""Acceptance criteria 1-11.

Each test prints one line ``[PASS|FAIL] <criterion>: max_error=... (tol ...),
time=...s (limit ...s)`` and asserts both the tolerance and the time limit.
Run with ``python3 tests/test_acceptance.py`` for the summary alone.
"""
import time

import numpy as np
import pytest

from geoquant import checks
from geoquant.random_instances import as_rng

SEED = 20240611


def _report(capsys, label, errors, tol, limit, elapsed, extra=""):
    worst = float(np.max(errors)) if len(errors) else 0.0
    ok = worst <= tol and elapsed < limit
    line = (f"[{'PASS' if ok else 'FAIL'}] {label}: max_error={worst:.3e} (tol {tol:g}), "
            f"time={elapsed:.2f}s (limit {limit:g}s){extra}")
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    return worst, ok


def _run(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _dims(rng, trials, nmax):
    return [1 + i % nmax for i in range(trials)]


def crit1(capsys=None):
    rng = as_rng(SEED + 1)
    errs, dt = _run(lambda: [checks.roundtrip_error(n, rng) for n in _dims(rng, 100, 8)])
    return _report(capsys, "1 J<->Omega round trip (100 each way, n<=8)", errs, 1e-9, 5, dt)


def crit2(capsys=None):
    rng = as_rng(SEED + 2)
    errs, dt = _run(lambda: [checks.invariants_error(n, rng) for n in _dims(rng, 100, 8)])
    return _report(capsys, "2 complex-structure invariants of j_from_omega", errs, 1e-10, 2, dt)


def crit3(capsys=None):
    rng = as_rng(SEED + 3)

    def work():
        iso = [checks.isometry_error(checks.random_quantization(1 + i % 3, rng), rng) for i in range(50)]
        quad = []
        for n in (1, 2):
            q = checks.random_quantization(n, rng)
            quad.append(checks.transform_quadrature_error(q, rng))
            quad.append(checks.pairing_quadrature_error(q, rng))
        return iso, quad

    (iso, quad), dt = _run(work)
    a = _report(capsys, "3a Segal-Bargmann isometry, closed form (50 spans)", iso, 1e-12, 30, dt)
    b = _report(capsys, "3b Segal-Bargmann quadrature oracle (n=1,2)", quad, 1e-6, 30, dt)
    return max(a[0], b[0]), a[1] and b[1]


def crit4(capsys=None):
    rng = as_rng(SEED + 4)
    err, dt = _run(lambda: checks.coordinate_kernel_error(100, rng))
    return _report(capsys, "4 kernel vs coordinate kernel on E1/J0 (100 points)", [err], 1e-12, 1, dt)


def crit5(capsys=None):
    rng = as_rng(SEED + 5)
    errs, dt = _run(lambda: [checks.reproducing_error(checks.random_quantization(1 + i % 3, rng), rng)
                             for i in range(50)])
    return _report(capsys, "5 reproducing property and unit-norm coherent states", errs, 1e-10, 2, dt)


def crit6(capsys=None):
    rng = as_rng(SEED + 6)

    def work():
        errs = [checks.e1_ccr_error()]
        errs += [checks.ccr_error(checks.random_quantization(1 + i % 3, rng), rng) for i in range(30)]
        return errs

    errs, dt = _run(work)
    return _report(capsys, "6 CCR in both representations incl. [q,p]=i on E1", errs, 1e-10, 5, dt)


def crit7(capsys=None):
    rng = as_rng(SEED + 7)
    errs, dt = _run(lambda: [checks.intertwine_error(checks.random_quantization(1 + i % 3, rng), rng)
                             for i in range(50)])
    return _report(capsys, "7 transform intertwines observables (50 cases, n<=3)", errs, 1e-9, 10, dt)


def crit8(capsys=None):
    rng = as_rng(SEED + 8)
    errs, dt = _run(lambda: [checks.exp_creation_error(checks.random_quantization(1 + i % 3, rng), rng)
                             for i in range(20)])
    return _report(capsys, "8 exp-creation on vacuum (1 - fidelity)", errs, 1e-8, 5, dt)


def crit9(capsys=None):
    rng = as_rng(SEED + 9)

    def work():
        res = {"base": [], "transform": [], "intertwine": [], "linear": []}
        for i in range(12):
            q = checks.random_quantization(1 + i % 3, rng)
            aff = checks.random_affine(q.ps, rng)
            res["base"].append(checks.base_change_error(aff, q, rng))
            res["transform"].append(checks.affine_transform_error(aff, q, rng))
            res["intertwine"].append(checks.affine_intertwine_error(aff, q, rng))
            res["linear"].append(checks.linear_reduction_error(q, rng))
        return res

    res, dt = _run(work)
    parts = [
        _report(capsys, "9a affine base-change isometry", res["base"], 1e-12, 15, dt),
        _report(capsys, "9b affine transform isometry", res["transform"], 1e-12, 15, dt),
        _report(capsys, "9c affine observable intertwining", res["intertwine"], 1e-9, 15, dt),
        _report(capsys, "9d linear reduction (theta0=0)", res["linear"], 1e-12, 15, dt),
    ]
    return max(p[0] for p in parts), all(p[1] for p in parts)


def crit10(capsys=None):
    rng = as_rng(SEED + 10)

    def work():
        errs = [checks.lattice_error(1, 1.0, 1.0), checks.lattice_error(2, 1.0, 1.0)]
        for N in range(1, 9):
            m, a = rng.uniform(0.1, 3.0, size=2)
            errs.append(checks.lattice_error(N, m, a))
        return errs

    errs, dt = _run(work)
    return _report(capsys, "10 lattice vacuum form and two-point mode sum (N<=8)", errs, 1e-10, 5, dt)


def crit11(capsys=None):
    def work():
        r = checks.density_probe_demo()
        return r, checks.monotonicity_violation(r.residuals)

    (r, viol), dt = _run(work)
    extra = f", residuals {r.residuals[0]:.3e} -> {r.residuals[-1]:.3e}"
    return _report(capsys, "11 density probe residuals non-increasing", [viol], 0.0, 5, dt, extra)


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(crit, capsys):
    _, ok = crit(capsys)
    assert ok


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    print(f"{sum(ok for _, ok in results)}/{len(results)} criteria passed")
