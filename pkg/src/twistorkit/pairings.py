"""Complex-bilinear and Hermitian pairings on complexified Euclidean space.

The bilinear pairing extends the Euclidean dot product to C^d *without*
conjugation; isotropy of subspaces is always meant with respect to it.
"""

from __future__ import annotations

import numpy as np


class DimensionError(ValueError):
    pass


def _pair(u, v):
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionError(f"vector shapes differ: {u.shape} vs {v.shape}")
    return u, v


def bilinear_dot(u, v):
    """<u, v> = sum u_a v_a, with no conjugation.

    Symmetric and complex-bilinear; restricts to the Euclidean dot product on
    real vectors.
    """
    u, v = _pair(u, v)
    return complex(np.sum(u * v))


def hermitian_dot(u, v):
    """Sesquilinear pairing <u, v-bar>; positive-definite on the diagonal."""
    u, v = _pair(u, v)
    return complex(np.sum(u * np.conj(v)))


def is_isotropic_span(basis, tol=1e-10):
    """Whether all pairwise bilinear pairings of the basis vectors vanish.

    Returns ``(flag, max_residual)`` where the residual is the largest
    pairing magnitude over unordered pairs (including self-pairings).
    """
    basis = [np.asarray(b, dtype=complex) for b in basis]
    if not basis:
        raise DimensionError("empty basis")
    worst = 0.0
    for i, u in enumerate(basis):
        for v in basis[i:]:
            worst = max(worst, abs(bilinear_dot(u, v)))
    return worst <= tol, worst
