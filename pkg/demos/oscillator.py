"""One degree of freedom: coherent states, the Segal-Bargmann transform and
the canonical commutator, on the simplest phase space (E1 with J0).

    python3 demos/oscillator.py
"""
import numpy as np

from geoquant import (
    CoherentSpan,
    Quantization,
    commutator_defect,
    observable,
    pairing,
    reference_complex_structure,
    standard_phase_space,
    transform,
)
from geoquant.observables import configuration_observable, exp_creation_on_vacuum

ps = standard_phase_space(1)
quant = Quantization(ps, J=reference_complex_structure(ps))

# A superposition of two displaced Gaussians in the Schrodinger picture.
cat = CoherentSpan.coherent(quant, "reduced", np.array([1.5, 0.0])) + CoherentSpan.coherent(
    quant, "reduced", np.array([-1.5, 0.0])
)
print("Schrodinger norm^2        ", cat.inner(cat).real)

# The transform is an isometry onto the holomorphic representation.
hol = transform(cat)
print("holomorphic norm^2        ", hol.inner(hol).real)
print("pairing <B(cat), cat>      ", pairing(hol, cat))

# Canonical commutator between position and momentum.
q_obs = configuration_observable(ps, 0)
p_obs = observable(ps, np.array([0.0, 1.0]))
r = commutator_defect(quant, q_obs, p_obs, cat)
print("[q, p] psi = c psi with c =", np.round(r.constant, 14), " deviation", r.deviation)

# exp of a creation operator applied to the vacuum lands on a coherent state.
res = exp_creation_on_vacuum(quant, np.array([0.8, -0.3]))
print(f"exp(F+) K_0: series cap {res.cap}, label {res.label}, fidelity {res.fidelity:.15f}")

# Sample the full wave function (reduced prefactor times the vacuum) on a line.
full = cat.to_full()
for phi in np.linspace(-3, 3, 7):
    print(f"  phi={phi:+.1f}  |psi|={abs(full(np.array([phi]))):.5f}")
