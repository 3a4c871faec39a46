"""
Tensor algebra: invariants, SPD square root, rank-one splitting
"""

import numpy as np
import pytest

from conftest import random_gradient
from core.errors import DomainError
from core.tensor import (IDENTITY, cofactor, det, dev, eigen_invariants, inv_transpose, invariants, is_rotation,
                         is_spd, rank_one_decompose, skew, spd_inverse, spd_sqrt, sym)


def test_identity_invariants():
    inv = invariants(IDENTITY)
    assert inv.as_tuple() == (3.0, 3.0, 1.0)


def test_invariants_match_eigenvalues(rng):
    for _ in range(200):
        F = random_gradient(rng)
        B = F @ F.T
        a, b = invariants(B), eigen_invariants(B)
        assert a.I1 == pytest.approx(b.I1, rel=1e-12)
        assert a.I2 == pytest.approx(b.I2, rel=1e-11)
        assert a.I3 == pytest.approx(b.I3, rel=1e-11)


def test_invariants_reject_indefinite():
    with pytest.raises(DomainError):
        invariants(np.diag([1.0, -1.0, 1.0]))
    with pytest.raises(DomainError):
        invariants(np.array([[1.0, 2.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]))


def test_cofactor_and_inverse(rng):
    for _ in range(50):
        F = random_gradient(rng)
        assert np.allclose(cofactor(F), det(F) * np.linalg.inv(F).T, atol=1e-12)
        assert np.allclose(inv_transpose(F) @ F.T, IDENTITY, atol=1e-12)
        assert det(F) == pytest.approx(np.linalg.det(F), rel=1e-12)


def test_sym_skew_dev():
    M = np.arange(9.0).reshape(3, 3)
    assert np.allclose(sym(M) + skew(M), M)
    assert np.allclose(sym(M), sym(M).T)
    assert np.trace(dev(M)) == pytest.approx(0.0, abs=1e-14)


def test_spd_sqrt(rng):
    assert np.array_equal(spd_sqrt(np.diag([4.0, 9.0, 1.0])), np.diag([2.0, 3.0, 1.0]))
    for _ in range(100):
        F = random_gradient(rng)
        B = F @ F.T
        V = spd_sqrt(B)
        assert np.abs(V @ V - B).max() <= 1e-12 * max(1.0, np.abs(B).max())
        assert np.allclose(V, V.T)
        assert is_spd(V)
        assert np.allclose(spd_inverse(B) @ B, IDENTITY, atol=1e-10)


def test_spd_sqrt_rejects_negative_eigenvalue():
    with pytest.raises(DomainError):
        spd_sqrt(np.diag([1.0, 1.0, -1.0]))
    assert not is_spd(np.diag([1.0, 0.0, 1.0]))


def test_is_rotation():
    c, s = np.cos(0.3), np.sin(0.3)
    R = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    assert is_rotation(R)
    assert not is_rotation(np.diag([1.0, 1.0, -1.0]))
    assert not is_rotation(2.0 * IDENTITY)


def test_rank_one_decompose_exact_for_phase_difference():
    a = 1.0
    for s in (0.1, 0.3, 0.45):
        D = np.zeros((3, 3))
        D[0, 1] = -2.0 * s * a
        dec = rank_one_decompose(D)
        assert dec is not None and not dec.degenerate
        assert np.array_equal(np.abs(dec.n), [0.0, 1.0, 0.0])
        assert np.abs(dec.outer() - D).max() <= 1e-12


def test_rank_one_decompose_random(rng):
    for _ in range(100):
        a, n = rng.standard_normal(3), rng.standard_normal(3)
        D = np.outer(a, n)
        dec = rank_one_decompose(D)
        assert dec is not None
        assert np.linalg.norm(dec.n) == pytest.approx(1.0)
        assert np.abs(dec.outer() - D).max() <= 1e-12 * max(1.0, np.abs(D).max())


def test_rank_one_decompose_edge_cases():
    zero = rank_one_decompose(np.zeros((3, 3)))
    assert zero.degenerate
    assert np.array_equal(zero.a, np.zeros(3))
    assert rank_one_decompose(IDENTITY) is None


def test_shape_checks():
    with pytest.raises(DomainError):
        det(np.eye(2))
    with pytest.raises(DomainError):
        invariants(np.full((3, 3), np.nan))


def test_hand_computed_values(rng):
    assert invariants(np.diag([4.0, 1.0, 0.25])).as_tuple() == pytest.approx((5.25, 5.25, 1.0))
    assert np.array_equal(cofactor(np.diag([2.0, 3.0, 4.0])), np.diag([12.0, 8.0, 6.0]))
    assert det(np.diag([2.0, 3.0, 4.0])) == 24.0
    for _ in range(50):
        M, N = rng.standard_normal((3, 3)), rng.standard_normal((3, 3))
        assert det(M) * det(N) == pytest.approx(det(M @ N), rel=1e-12, abs=1e-12)
        assert np.allclose(M @ cofactor(M).T, det(M) * IDENTITY, atol=1e-12)
