"""The pointwise twistor layer: structures, isotropic planes, the mu-chart.

A positive Hermitian structure J on R^(2k) is the same thing as an isotropic
k-plane in C^(2k) (its (1,0)-eigenspace); the chart below labels an open
dense set of structures by a skew matrix parameter.
"""

import numpy as np

from twistorkit import (
    canonical_structure,
    from_isotropic,
    is_positive,
    jv_apply,
    mj_basis,
    mj_residual,
    mu_from_structure,
    so_action,
    structure_from_mu,
    to_isotropic,
    twistor_chart,
)

rng = np.random.default_rng(0)

J0 = canonical_structure(2)
print("canonical structure on R^4:\n", J0.matrix)
print("positive:", is_positive(J0))

# the (1,0)-plane and the way back
F = to_isotropic(J0)
print("\n(1,0)-plane rows:\n", np.round(F.basis, 3))
print("round trip recovers J:", np.allclose(from_isotropic(F).matrix, J0.matrix))

# rotations act by conjugation and preserve positivity; reflections flip it
Q, R = np.linalg.qr(rng.normal(size=(4, 4)))
Q = Q @ np.diag(np.sign(np.diag(R)))
if np.linalg.det(Q) < 0:
    Q[:, 0] = -Q[:, 0]
J = so_action(Q, J0)
refl = np.diag([-1.0, 1, 1, 1])
print("\nrotated structure positive:   ", is_positive(J))
print("reflected structure positive: ", is_positive(so_action(refl, J)))

# the vertical tangent space at J: skew matrices anticommuting with J
basis = mj_basis(J)
print("\nvertical space dimension at J (k=2 gives 2):", len(basis))
lam = basis[0] + 0.5 * basis[1]
print("J acts on it as a complex structure:",
      np.allclose(jv_apply(J, jv_apply(J, lam)), -lam),
      " residual in the space:", mj_residual(jv_apply(J, lam), J))

# the mu-chart: a holomorphic label for almost every structure
mu = np.array([0.3 + 0.2j])
Jmu = structure_from_mu(mu, 2)
print("\nchart label recovered:", mu_from_structure(Jmu), " positive:", is_positive(Jmu))
w, _ = twistor_chart(np.array([1 + 1j, 2.0]), mu)
print("chart image w = q - M(mu) qbar:", w)
