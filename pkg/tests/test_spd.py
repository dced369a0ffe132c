"""Tests for Cholesky factorization with jitter, solves and bordered extension."""

import numpy as np
import pytest

from krigmorph.errors import DimensionError, SingularMatrixError, ZeroVarianceError
from krigmorph.services import spd
from krigmorph.services.kernel import KernelSpec, cov_matrix

E_HALF = np.exp(-0.5)
KERNEL_2X2 = np.array([[1.0, E_HALF], [E_HALF, 1.0]])


class TestFactorize:
    def test_identity(self):
        factor = spd.factorize(np.eye(2))
        np.testing.assert_array_equal(factor.L, np.eye(2))
        assert factor.jitter == 0.0

    def test_kernel_matrix(self):
        factor = spd.factorize(KERNEL_2X2)
        expected = [[1.0, 0.0], [E_HALF, np.sqrt(1 - np.exp(-1))]]
        np.testing.assert_allclose(factor.L, expected, atol=1e-15)
        assert factor.jitter == 0.0

    def test_duplicate_nodes_need_jitter(self):
        factor = spd.factorize(np.ones((2, 2)))
        assert factor.jitter > 0
        np.testing.assert_allclose(factor.reconstruct(), np.ones((2, 2)) + factor.jitter * np.eye(2))

    def test_without_regularization(self):
        with pytest.raises(SingularMatrixError):
            spd.factorize(np.ones((2, 2)), regularize=False)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            spd.factorize(np.zeros((3, 3)))

    def test_not_square(self):
        with pytest.raises(DimensionError):
            spd.factorize(np.ones((2, 3)))


class TestSolve:
    def test_identity(self, rng):
        B = rng.normal(size=(2, 4))
        np.testing.assert_allclose(spd.solve(spd.factorize(np.eye(2)), B), B)

    def test_diagonal(self):
        X = spd.solve(spd.factorize(2 * np.eye(2)), [[1.0], [1.0]])
        np.testing.assert_allclose(X, [[0.5], [0.5]])

    def test_column_of_matrix(self):
        X = spd.solve(spd.factorize(KERNEL_2X2), KERNEL_2X2[:, :1])
        np.testing.assert_allclose(X, [[1.0], [0.0]], atol=1e-14)

    def test_random_spd_recovers_solution(self, rng):
        for size in (1, 2, 5, 20, 60):
            G = rng.normal(size=(size, size))
            A = G.T @ G + np.eye(size)
            x = rng.normal(size=(size, 3))
            factor = spd.factorize(A)
            assert factor.jitter == 0.0
            np.testing.assert_allclose(spd.solve(factor, A @ x), x, atol=1e-8)

    def test_forward_gives_quadratic_form(self, rng):
        A = cov_matrix(KernelSpec("matern32", 0.5), *(2 * [rng.uniform(0, 3, size=(8, 3))]))
        factor = spd.factorize(A)
        b = rng.normal(size=(8, 1))
        V = spd.forward(factor, b)
        assert (V.T @ V).item() == pytest.approx((b.T @ np.linalg.solve(A, b)).item(), rel=1e-8)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            spd.solve(spd.factorize(np.eye(2)), np.ones((3, 1)))


class TestExtend:
    def test_matches_factorize(self, rng):
        X = rng.uniform(0, 4, size=(12, 3))
        A = cov_matrix(KernelSpec("gaussian", 0.6), X, X)
        factor = None
        for k in range(len(X)):
            factor = spd.extend(factor, A[:k, k], A[k, k])
        full = spd.factorize(A)
        assert full.jitter == 0.0
        np.testing.assert_allclose(factor.L, full.L, atol=1e-10)

    def test_does_not_modify_input(self):
        factor = spd.factorize(np.eye(2))
        before = factor.L.copy()
        bigger = spd.extend(factor, [0.5, 0.0], 1.0)
        np.testing.assert_array_equal(factor.L, before)
        assert bigger.size == 3

    def test_zero_residual_variance(self):
        factor = spd.factorize(np.eye(1))
        with pytest.raises(ZeroVarianceError):
            spd.extend(factor, [1.0], 1.0)
