"""Residual checkers for every pointwise map property, on a small zoo.

Each checker returns a number that vanishes exactly when the property holds
at the point; jets make the evaluation exact for polynomial maps.
"""

import numpy as np

from twistorkit import (
    SmoothMap,
    conformality_residual,
    harmonic_morphism_residual,
    harmonicity_residual,
    hwc_residual,
    one_one_geodesic_residual,
    pluriconformality_residual,
    pullback_harmonic_oracle,
    real_isotropy_residual,
    umbilic_residual,
    weak_conformality,
)
from twistorkit.factory import closed_form_r6

z0 = [0.7, -0.4]

zoo = {
    "z -> z^3 (holomorphic)": SmoothMap.from_complex(1, 1, lambda z: [z ** 3]),
    "(x, y) -> (x, 2y)": SmoothMap.from_real(2, 2, lambda x, y: [x, 2 * y]),
    "z -> (z^2 + zbar) doubled": SmoothMap.from_complex(
        1, 2, lambda z: [z * z + z.conj(), z * z + z.conj()]),
    "z -> |z|^2": SmoothMap.from_complex(1, 1, lambda z: [z * z.conj()]),
}

for name, phi in zoo.items():
    print(f"\n{name}")
    print("  conformality:      ", conformality_residual(phi, z0))
    print("  harmonicity:       ", harmonicity_residual(phi, z0))
    print("  isotropy (R = 3):  ", real_isotropy_residual(phi, z0, 3))
    if phi.codomain_dim == 4:
        print("  umbilic:           ", umbilic_residual(phi, z0))
    print("  (1,1)-geodesic:    ", one_one_geodesic_residual(phi, z0))

# ---------------------------------------------------------------------------
# a genuine harmonic morphism from R^6, and its definitional oracle

phi = closed_form_r6()
rng = np.random.default_rng(1)
q = None
while q is None:
    c = rng.uniform(-1, 1, 6)
    qc = c[0::2] + 1j * c[1::2]
    if abs(1 + np.conj(qc[0]) - np.conj(qc[1])) > 0.2:
        q = c
print("\nclosed-form morphism R^6 -> C at a random admissible point")
harm, hwc = harmonic_morphism_residual(phi, q)
lam, _ = hwc_residual(phi, q)
print("  harmonic + horizontally conformal residuals:", (harm, hwc))
print("  conformality factor of the horizontal part: ", lam)
print("  pullback of w^3 stays harmonic:             ",
      pullback_harmonic_oracle(phi, [0, 0, 0, 1.0], q))

# a holomorphic map C^2 -> C^2 that is pluriconformal but not conformal
pc = SmoothMap.from_complex(2, 2, lambda z1, z2: [z1, z1 * z2])
pt = np.array([1.0, 0.0, 1.0, 0.0])
print("\n(z1, z2) -> (z1, z1 z2) at (1, 1)")
print("  pluriconformality:", pluriconformality_residual(pc, pt))
print("  conformality Gram deviation:", weak_conformality(pc, pt)[1])
