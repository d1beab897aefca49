"""Twistor lifts of surfaces in R^4 and the two vertical conditions.

The strictly compatible lift pairs a weakly conformal map with the unique
structure field (up to orientation) whose (1,0)-space contains the first two
dz derivatives.  Its vertical-holomorphy residuals split the geometry:
condition a = 2 holds iff the map is harmonic, a = 1 iff it is real
isotropic -- the demo shows a map where exactly one side survives.
"""

import numpy as np

from twistorkit import (
    SmoothMap,
    canonical_structure,
    harmonicity_residual,
    holomorphy_residual,
    j_vertical_residual,
    mj_residual,
    real_isotropy_residual,
    strictly_compatible_lift_r4,
    structure_from_mu,
    t10_stability_residual,
    vertical_part,
)

p = np.array([0.8, 0.5])
t = complex(p[0], p[1])

# ---------------------------------------------------------------------------
# a holomorphic graph: everything holds, and the lift is the constant J0

graph = SmoothMap.from_complex(1, 2, lambda z: [z, z * z])
L = strictly_compatible_lift_r4(graph, p)
print("phi(z) = (z, z^2)")
print("  orientation sign:", L.sign, " umbilic branch:", L.both_signs_valid)
print("  holomorphy wrt the lift:",
      holomorphy_residual(graph, canonical_structure(1), L.structure(p), p))
print("  vertical a=2 / a=1:", j_vertical_residual(L, p, 2), j_vertical_residual(L, p, 1))
print("  stability z / zbar:", t10_stability_residual(L, p, "z"),
      t10_stability_residual(L, p, "zbar"))

# ---------------------------------------------------------------------------
# the projection of a holomorphic chart disk: real isotropic, NOT harmonic


def chart_disk(tj):
    w1, w2, mu = tj, tj * tj, tj
    den = 1 + mu * mu.conj()
    return [(w1 + mu * w2.conj()) / den, (w2 - mu * w1.conj()) / den]


disk = SmoothMap.from_complex(1, 2, chart_disk)
L2 = strictly_compatible_lift_r4(disk, p)
print("\nprojection of the chart disk (w, mu)(t) = ((t, t^2), t)")
print("  real isotropy through order 4:", real_isotropy_residual(disk, t, 4))
print("  harmonicity (fails):          ", harmonicity_residual(disk, p))
print("  lift equals the chart structure J(mu = t):",
      np.allclose(L2.structure(p).matrix, structure_from_mu([t], 2).matrix))
print("  vertical a=1 (isotropy side): ", j_vertical_residual(L2, p, 1))
print("  vertical a=2 (harmonic side): ", j_vertical_residual(L2, p, 2))
print("  stability z / zbar:           ", t10_stability_residual(L2, p, "z"),
      t10_stability_residual(L2, p, "zbar"))

# the derivative of the structure field lives in the vertical space
vp = vertical_part(L2, p, [1.0, 0.0])
print("  vertical part along dx: norm", np.linalg.norm(vp),
      " distance from the vertical space:", mj_residual(vp, L2.structure(p)))

# ---------------------------------------------------------------------------
# the umbilic branch: both orientation signs are valid

fold = SmoothMap.from_complex(1, 2, lambda z: [(z + z.conj()) * 0.5,
                                               (z - z.conj()) * 0.5])
L3 = strictly_compatible_lift_r4(fold, p)
print("\nphi(z) = (Re z, i Im z): degenerate second derivative")
print("  umbilic branch, both signs valid:", L3.both_signs_valid)
print("  constant structure field:\n", L3.structure(p).matrix)
