"""Strictly compatible lifts and the vertical/stability residuals."""

import numpy as np
import pytest

from twistorkit.checkers import (
    harmonicity_residual,
    holomorphy_residual,
    real_isotropy_residual,
)
from twistorkit.jets import SmoothMap
from twistorkit.lifts import (
    LiftError,
    constant_lift,
    j_vertical_residual,
    matrix_field_lift,
    strictly_compatible_lift_r4,
    t10_stability_residual,
    vertical_part,
)
from twistorkit.structures import (
    canonical_structure,
    is_positive,
    mj_residual,
    structure_from_mu,
)

RNG = np.random.default_rng(515)

HOLO = SmoothMap.from_complex(1, 2, lambda z: [z, z * z])


def chart_disk_map():
    """Projection of the holomorphic chart disk (w, mu)(t) = ((t, t^2), t):
    real isotropic and horizontally nontrivial but not harmonic."""

    def fn(t):
        w1, w2, mu = t, t * t, t
        den = 1 + mu * mu.conj()
        return [(w1 + mu * w2.conj()) / den, (w2 - mu * w1.conj()) / den]

    return SmoothMap.from_complex(1, 2, fn)


def test_lift_of_holomorphic_graph():
    for _ in range(20):
        p = RNG.uniform(-0.9, 0.9, 2)
        L = strictly_compatible_lift_r4(HOLO, p)
        assert L.sign == +1 and not L.both_signs_valid
        J = L.structure(p)
        assert np.allclose(J.matrix, canonical_structure(2).matrix, atol=1e-12)
        assert holomorphy_residual(HOLO, canonical_structure(1), J, p) <= 1e-10
        # the (1,0)-space contains both derivative vectors
        from twistorkit.jets import dz_power
        from twistorkit.structures import to_isotropic

        F = to_isotropic(J).basis
        for r in (1, 2):
            v = dz_power(HOLO, r, p, order=2)
            stacked = np.vstack([F, v])
            assert np.linalg.matrix_rank(stacked, tol=1e-8) == 2


def test_lift_vertical_conditions_on_holomorphic_graph():
    for _ in range(10):
        p = RNG.uniform(-0.9, 0.9, 2)
        L = strictly_compatible_lift_r4(HOLO, p)
        assert j_vertical_residual(L, p, 2) <= 1e-9   # harmonic side
        assert j_vertical_residual(L, p, 1) <= 1e-9   # isotropic side
        assert t10_stability_residual(L, p, "z") <= 1e-9
        assert t10_stability_residual(L, p, "zbar") <= 1e-9


def test_lift_of_chart_disk_matches_chart_structure():
    phi = chart_disk_map()
    for _ in range(10):
        p = RNG.uniform(-0.9, 0.9, 2)
        t = complex(p[0], p[1])
        assert real_isotropy_residual(phi, t, 4) <= 1e-12
        assert harmonicity_residual(phi, p) > 0.1
        L = strictly_compatible_lift_r4(phi, p)
        assert not L.both_signs_valid
        J = L.structure(p)
        Jmu = structure_from_mu([t], 2)
        assert np.max(np.abs(J.matrix - Jmu.matrix)) < 1e-10
        # isotropy side holds, harmonic side fails
        assert j_vertical_residual(L, p, 1) <= 1e-9
        assert t10_stability_residual(L, p, "z") <= 1e-9
        assert j_vertical_residual(L, p, 2) > 0.05
        assert t10_stability_residual(L, p, "zbar") > 0.05


def test_projection_theorems_desk_scale():
    """Lifts passing the vertical conditions project to maps with the
    matching property, across the corpus."""
    corpus = [HOLO, chart_disk_map()]
    tol = 1e-9
    for phi in corpus:
        for _ in range(10):
            p = RNG.uniform(-0.9, 0.9, 2)
            L = strictly_compatible_lift_r4(phi, p)
            holo_res = holomorphy_residual(phi, canonical_structure(1), L.structure(p), p)
            if j_vertical_residual(L, p, 2) <= tol and holo_res <= tol:
                assert harmonicity_residual(phi, p) <= 10 * tol
            if (j_vertical_residual(L, p, 1) <= tol
                    and t10_stability_residual(L, p, "z") <= tol):
                t = complex(p[0], p[1])
                assert real_isotropy_residual(phi, t, 4) <= 10 * tol


def test_vertical_part_lands_in_vertical_space():
    phi = chart_disk_map()
    for _ in range(10):
        p = RNG.uniform(-0.9, 0.9, 2)
        L = strictly_compatible_lift_r4(phi, p)
        X = RNG.normal(size=2)
        vp = vertical_part(L, p, X)
        assert mj_residual(vp, L.structure(p)) <= 1e-8
    # the disk's structure genuinely varies: some direction has a nonzero
    # vertical part (the holomorphic graph's lift is constant, so it is the
    # wrong carrier for this property)
    p = np.array([0.4, 0.3])
    L = strictly_compatible_lift_r4(phi, p)
    assert max(np.linalg.norm(vertical_part(L, p, X))
               for X in ([1.0, 0.0], [0.0, 1.0])) > 1e-3
    Lc = constant_lift(phi, canonical_structure(2))
    assert np.max(np.abs(vertical_part(Lc, [0.1, 0.2], [1.0, 0.0]))) == 0.0


def test_vertical_part_of_rotated_field_is_commutator():
    # J(x, y) = R(x) J0 R(x)^T for a rotation in the (e1, e3)-plane
    J0 = canonical_structure(2).matrix
    A = np.zeros((4, 4))
    A[0, 2], A[2, 0] = -1.0, 1.0

    def field(space):
        x = space.var(0)
        e = (1j * x).exp()
        c, s = e.real, e.imag
        z = space.const(0.0)
        one = space.const(1.0)
        R = [[c, z, -s, z], [z, one, z, z], [s, z, c, z], [z, z, z, one]]
        RT = [[R[j][i] for j in range(4)] for i in range(4)]
        J0j = [[space.const(J0[i][j]) for j in range(4)] for i in range(4)]

        def mm(X, Y):
            return [[sum((X[i][k] * Y[k][j] for k in range(4)), space.const(0.0))
                     for j in range(4)] for i in range(4)]

        return mm(mm(R, J0j), RT)

    phi = SmoothMap.from_complex(1, 2, lambda z: [z, z * z])
    L = matrix_field_lift(phi, field)
    p = np.array([0.4, -0.2])
    vp = vertical_part(L, p, [1.0, 0.0])
    J = L.structure(p).matrix
    assert np.max(np.abs(vp - (A @ J - J @ A))) <= 1e-12
    assert mj_residual(vp, L.structure(p)) <= 1e-10
    # the twisted field fails both vertical conditions and stability
    assert j_vertical_residual(L, p, 1) > 0.1
    assert j_vertical_residual(L, p, 2) > 0.1
    assert t10_stability_residual(L, p, "z") > 0.01


def test_umbilic_branch_and_corrected_constant_structure():
    fold = SmoothMap.from_complex(
        1, 2, lambda z: [(z + z.conj()) * 0.5, (z - z.conj()) * 0.5])
    L = strictly_compatible_lift_r4(fold, np.array([0.1, 0.2]))
    assert L.both_signs_valid and L.sign == +1
    J = L.structure([0.1, 0.2]).matrix
    expected = np.zeros((4, 4))
    expected[3, 0], expected[0, 3] = 1, -1
    expected[2, 1], expected[1, 2] = 1, -1
    assert np.allclose(J, expected)
    assert holomorphy_residual(fold, canonical_structure(1), J, [0.1, 0.2]) <= 1e-12
    assert j_vertical_residual(L, [0.1, 0.2], 1) <= 1e-10


def test_umbilic_branch_both_signs_hold_isotropy_condition():
    # exp-diagonal map: second derivative proportional to the first
    emap = SmoothMap.from_complex(1, 2, lambda z: [z.exp(), z.exp()])
    p = np.array([0.2, 0.3])
    L = strictly_compatible_lift_r4(emap, p)
    assert L.both_signs_valid
    assert j_vertical_residual(L, p, 1) <= 1e-9


def test_branch_point_and_isotropy_guards():
    const = SmoothMap.from_complex(1, 2, lambda z: [0 * z, 0 * z])
    with pytest.raises(LiftError):
        strictly_compatible_lift_r4(const, [0.0, 0.0])
    stretch = SmoothMap.from_complex(1, 2, lambda z: [z + 2 * z.conj(), 0 * z])
    with pytest.raises(LiftError):
        strictly_compatible_lift_r4(stretch, [0.1, 0.1])
    # conformal harmonic but with non-isotropic second derivative content
    def mini(z):
        G1 = z - z * z * z / 3
        G2 = 1j * (z + z * z * z / 3)
        G3 = z * z
        re = lambda w: (w + w.conj()) * 0.5
        return [re(G1) + 1j * re(G2), re(G3) + 0j * z]

    minimal = SmoothMap.from_complex(1, 2, mini)
    with pytest.raises(LiftError):
        strictly_compatible_lift_r4(minimal, [0.8, 0.5])


def sphere_fibre(count=64):
    """Fibonacci sample of the positive-structure fibre of R^4 (a 2-sphere
    in the quaternionic basis)."""
    J1 = canonical_structure(2).matrix
    J2 = np.zeros((4, 4))
    J2[2, 0], J2[0, 2] = 1, -1    # e1 -> e3
    J2[1, 3], J2[3, 1] = 1, -1    # e4 -> e2
    J3 = J1 @ J2
    golden = (1 + 5 ** 0.5) / 2
    out = []
    for i in range(count):
        zc = 1 - 2 * (i + 0.5) / count
        r = np.sqrt(1 - zc * zc)
        th = 2 * np.pi * i / golden
        a = np.array([r * np.cos(th), r * np.sin(th), zc])
        out.append(a[0] * J1 + a[1] * J2 + a[2] * J3)
    return out


def test_fibre_parametrization_is_valid():
    for J in sphere_fibre(16):
        assert np.max(np.abs(J @ J + np.eye(4))) < 1e-12
        assert np.max(np.abs(J.T @ J - np.eye(4))) < 1e-12
        from twistorkit.structures import HermitianStructure

        assert is_positive(HermitianStructure(J))


def test_lift_structure_unique_on_fibre():
    """Brute-force sweep of the positive fibre: the constructed structure is
    the only one rendering the map holomorphic (up to the reported sign)."""
    phi = chart_disk_map()
    p = np.array([0.35, -0.55])
    L = strictly_compatible_lift_r4(phi, p)
    Jlift = L.structure(p).matrix
    best_other = np.inf
    for J in sphere_fibre(64):
        res = holomorphy_residual(phi, canonical_structure(1), J, p)
        dist = np.max(np.abs(J - Jlift))
        if dist > 0.5:
            best_other = min(best_other, res)
    assert holomorphy_residual(phi, canonical_structure(1), Jlift, p) <= 1e-10
    assert best_other > 1e-2
