"""Approximating a Schrodinger wave function by finitely many coherent states.

The target ``phi * K_0`` is projected onto the span of the first k plane-wave
coherent states; the residual shrinks as k grows. A Monte Carlo moment in
four dimensions, where tensor quadrature is too expensive, closes the demo.

    python3 demos/density_probe.py
"""
import numpy as np

from geoquant.checks import DENSITY_DEMO, density_probe_demo
from geoquant.gaussian_numerics import GaussianMeasure, gaussian_moment, integrate_mc

r = density_probe_demo()
print(f"{DENSITY_DEMO['count']} states, label spacing {DENSITY_DEMO['spacing']}")
for k, res in enumerate(r.residuals):
    print(f"  k={k:2d}  residual={res:.3e}  " + "#" * int(60 * res / r.residuals[0]))

P = np.diag([1.0, 2.0, 0.5, 1.5]) + 0.2
m = GaussianMeasure(P)
mc = integrate_mc(lambda x: x[:, 0] ** 2 * x[:, 3] ** 2, m)
print(f"E[x0^2 x3^2]: Monte Carlo {mc:.4f}, exact {gaussian_moment(P, (2, 0, 0, 2)):.4f}")
