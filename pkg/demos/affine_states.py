"""Coherent states on an affine phase space, where no point is preferred.

The base point of a span can be moved freely; inner products and the
Schrodinger-to-holomorphic transform do not notice.

    python3 demos/affine_states.py
"""
import numpy as np

from geoquant import affine as af
from geoquant.checks import random_quantization

rng = np.random.default_rng(3)
quant = random_quantization(2, rng)
aff = af.affine_space(quant.ps, rng.normal(size=4) @ quant.ps.proj_N)

a = af.AffineSpan.coherent(aff, quant, "schrodinger", rng.normal(size=4))
b = af.AffineSpan.coherent(aff, quant, "schrodinger", rng.normal(size=4), base=a.base)
print("<a, b>                 ", a.inner(b))
for _ in range(3):
    eta = rng.normal(size=4) * 2
    print("<a, b> at another base ", a.rebase(eta).inner(b.rebase(eta)))

ha, hb = af.transform_affine(a), af.transform_affine(b)
print("<B a, B b>             ", ha.inner(hb))

F = af.affine_observable(quant.ps, rng.normal(size=4), value=0.7)
lhs = af.transform_affine(af.apply_affine_observable(F, a))
rhs = af.apply_affine_observable(F, ha)
print("||B F a - F B a||      ", (lhs - rhs).to_linear().simplify().norm())
