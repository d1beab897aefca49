"""Flat connection forms: flatness, product integration, curvature."""

import numpy as np
import pytest
import scipy.linalg

from twistorkit.connections import (
    BlowupError,
    GroupPath,
    LieValuedForm,
    PathError,
    curvature_02_residual,
    expm,
    flatness_residual,
    integrate_path,
    maurer_cartan_form,
    maurer_cartan_value,
    path_independence_defect,
)

RNG = np.random.default_rng(808)


def random_skew(k, rng=RNG):
    A = rng.normal(size=(k, k))
    return A - A.T


def test_expm_against_scipy():
    for scale in (0.1, 1.0, 10.0):
        for _ in range(5):
            A = scale * RNG.normal(size=(5, 5))
            ref = scipy.linalg.expm(A)
            err = np.linalg.norm(expm(A) - ref) / max(1.0, np.linalg.norm(ref))
            assert err <= 1e-12


def test_maurer_cartan_flatness():
    A, B = random_skew(4), random_skew(4)
    form = maurer_cartan_form(A, B)
    for _ in range(20):
        assert flatness_residual(form, RNG.uniform(-1, 1, 2)) <= 1e-9


def test_constant_commuting_form_is_flat():
    A = random_skew(3)
    form = LieValuedForm.constant([A, 2.0 * A])
    assert flatness_residual(form, np.zeros(2)) <= 1e-14


def test_nonflat_form_detected():
    E12 = np.zeros((3, 3))
    E12[0, 1] = 1.0

    def comps(space):
        x2 = space.var(1)
        z = space.const(0.0)
        a1 = [[x2 if (a, b) == (0, 1) else z + 0.0 for b in range(3)] for a in range(3)]
        a2 = [[z + 0.0 for _ in range(3)] for _ in range(3)]
        return [a1, a2]

    form = LieValuedForm(2, 3, comps)
    assert abs(flatness_residual(form, [0.3, 0.8]) - 1.0) <= 1e-14
    # defect around the unit square equals area x curvature exactly here
    sq1 = np.array([[0, 0], [1, 0], [1, 1]], dtype=float)
    sq2 = np.array([[0, 0], [0, 1], [1, 1]], dtype=float)
    defect = path_independence_defect(form, sq1, sq2, 400)
    assert abs(defect - 1.0) <= 0.1


def test_constant_form_reproduces_exponential():
    A = random_skew(4)
    form = LieValuedForm.constant([A, np.zeros((4, 4))])
    f = integrate_path(form, np.array([[0.0, 0.0], [2.5, 0.0]]), steps=1000)
    assert np.linalg.norm(f - expm(2.5 * A)) <= 1e-10


def test_zero_form_gives_identity():
    form = LieValuedForm.constant([np.zeros((3, 3)), np.zeros((3, 3))])
    f = integrate_path(form, np.array([[0.0, 0.0], [1.0, 1.0]]), steps=10)
    assert np.allclose(f, np.eye(3))


def test_maurer_cartan_integration_recovers_group_element():
    A, B = random_skew(4), random_skew(4)
    form = maurer_cartan_form(A, B)
    path = np.array([[0.1, -0.2], [0.9, 0.7]])
    f = integrate_path(form, path, steps=1000)
    ref = np.linalg.inv(maurer_cartan_value(A, B, path[0])) @ maurer_cartan_value(A, B, path[1])
    assert np.linalg.norm(f - ref) <= 1e-5
    assert np.linalg.norm(f.T @ f - np.eye(4)) <= 1e-6  # stays orthogonal


def test_flat_path_independence():
    A, B = random_skew(4), random_skew(4)
    form = maurer_cartan_form(A, B)
    sq1 = np.array([[0, 0], [1, 0], [1, 1]], dtype=float)
    sq2 = np.array([[0, 0], [0, 1], [1, 1]], dtype=float)
    assert path_independence_defect(form, sq1, sq2, 2000) <= 1e-5
    with pytest.raises(PathError):
        path_independence_defect(form, sq1, np.array([[0, 0], [2, 2]], float), 100)


def test_second_order_convergence():
    A, B = random_skew(4), random_skew(4)
    form = maurer_cartan_form(A, B)
    path = np.array([[0.1, -0.2], [0.9, 0.7]])
    ref = np.linalg.inv(maurer_cartan_value(A, B, path[0])) @ maurer_cartan_value(A, B, path[1])
    errs = [np.linalg.norm(integrate_path(form, path, steps=s) - ref)
            for s in (100, 200, 400)]
    for i in range(2):
        order = np.log2(errs[i] / errs[i + 1])
        assert abs(order - 2.0) <= 0.2


def test_blowup_detection():
    big = 80.0 * np.eye(2)
    form = LieValuedForm.constant([-big, np.zeros((2, 2))])
    with pytest.raises(BlowupError):
        integrate_path(form, np.array([[0.0, 0.0], [4.0, 0.0]]), steps=8)


def test_group_path_validation():
    with pytest.raises(PathError):
        GroupPath(np.array([[0.0, 0.0]]), 10)


def test_curvature_02_residuals():
    # m = 1: nothing to antisymmetrize
    def gam1(space):
        return [[[space.const(RNG.normal()) for _ in range(2)] for _ in range(2)]]

    assert curvature_02_residual(gam1, 1, 2, [0.1, 0.2]) == 0.0

    M = RNG.normal(size=(2, 2))

    def gam_const(space):
        G = [[space.const(M[a, b]) for b in range(2)] for a in range(2)]
        return [G, [row[:] for row in G]]

    assert curvature_02_residual(gam_const, 2, 2, np.zeros(4)) <= 1e-14

    def gam_bad(space):
        zb2 = space.var(2) - 1j * space.var(3)
        z = space.const(0.0)
        G1 = [[z + 0.0, zb2], [z + 0.0, z + 0.0]]
        G2 = [[z + 0.0, z + 0.0], [z + 0.0, z + 0.0]]
        return [G1, G2]

    assert abs(curvature_02_residual(gam_bad, 2, 2, np.zeros(4)) - 1.0) <= 1e-14
