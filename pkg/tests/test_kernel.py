"""Tests for the covariance functions and the fixed-region modifier."""

import numpy as np
import pytest

from krigmorph.errors import ConfigurationError, DomainError
from krigmorph.services.geometry import FixedGeometry, Sphere
from krigmorph.services.kernel import (
    KernelFamily,
    KernelSpec,
    cov,
    cov_matrix,
    kappa,
    modifier,
    prior_variance,
)

from conftest import FAMILIES, random_fixed

E_HALF = np.exp(-0.5)


class TestKappa:
    def test_gaussian_values(self):
        assert kappa(KernelSpec("gaussian", 1.0), 0.0) == 1.0
        assert kappa(KernelSpec("gaussian", 1.0), 1.0) == pytest.approx(0.6065306597126334, abs=1e-15)
        assert kappa(KernelSpec("gaussian", 2.0), 2.0) == pytest.approx(0.6065306597126334, abs=1e-15)

    def test_matern_values(self):
        r = 0.7
        s3 = np.sqrt(3) * r
        s5 = np.sqrt(5) * r
        assert kappa(KernelSpec("matern32", 1.0), r) == pytest.approx((1 + s3) * np.exp(-s3))
        assert kappa(KernelSpec("matern52", 1.0), r) == pytest.approx(
            (1 + s5 + s5 * s5 / 3) * np.exp(-s5)
        )

    @pytest.mark.parametrize("family", FAMILIES)
    def test_normalized_and_decaying(self, family):
        spec = KernelSpec(family, 0.5)
        d = np.linspace(0, 20, 401)
        values = kappa(spec, d)
        assert values[0] == 1.0
        assert np.all(np.diff(values) <= 0)
        assert values[-1] < 1e-6

    def test_negative_distance(self):
        with pytest.raises(DomainError):
            kappa(KernelSpec("gaussian", 1.0), -0.1)

    def test_invalid_spec(self):
        with pytest.raises(ConfigurationError, match="theta must be positive"):
            KernelSpec("gaussian", 0.0)
        with pytest.raises(ConfigurationError, match="unknown kernel family"):
            KernelSpec("cubic", 1.0)
        assert KernelSpec("matern32", 1).family is KernelFamily.MATERN32


class TestModifier:
    @pytest.mark.parametrize("family", FAMILIES)
    def test_zero_inside_and_bounded(self, family, rng):
        spec = KernelSpec(family, 0.3, FixedGeometry((Sphere((0, 0, 0), 1.0),)))
        inside = rng.uniform(-0.5, 0.5, size=(20, 3))
        assert np.all(modifier(spec, inside) == 0.0)
        outside = rng.uniform(1.2, 1.5, size=(20, 3))
        f = modifier(spec, outside)
        assert np.all((f > 0) & (f < 1))
        assert modifier(spec, [[1000, 0, 0]])[0] == pytest.approx(1.0)

    def test_no_fixing_is_one(self, gaussian):
        assert modifier(gaussian, np.zeros((4, 3))).tolist() == [1.0] * 4


class TestCov:
    def test_examples(self, gaussian):
        assert cov(gaussian, (0, 0, 0), (0, 0, 0)) == 1.0
        assert cov(gaussian, (0, 0, 0), (1, 0, 0)) == pytest.approx(0.6065306597126334, abs=1e-15)
        fixed = KernelSpec("gaussian", 1.0, FixedGeometry((Sphere((0, 0, 0), 1.0),)))
        assert cov(fixed, (0, 0, 0.5), (3, 1, 2)) == 0.0

    def test_cov_matrix_examples(self, gaussian):
        assert cov_matrix(gaussian, [(0, 0, 0)], [(0, 0, 0)]).tolist() == [[1.0]]
        X = [(0, 0, 0), (1, 0, 0)]
        np.testing.assert_allclose(cov_matrix(gaussian, X, X), [[1, E_HALF], [E_HALF, 1]], atol=1e-15)

    def test_fixed_row_and_column_zero(self):
        spec = KernelSpec("gaussian", 1.0, FixedGeometry((Sphere((0, 0, 0), 1.0),)))
        X = [(0, 0, 0), (2, 0, 0), (0, 3, 0)]
        K = cov_matrix(spec, X, X)
        assert np.all(K[0] == 0) and np.all(K[:, 0] == 0)
        assert K[1, 1] > 0

    def test_empty(self, gaussian):
        with pytest.raises(DomainError):
            cov_matrix(gaussian, np.zeros((0, 3)), [(0, 0, 0)])


class TestPositiveSemidefinite:
    def test_symmetric_exactly(self, rng):
        for family in FAMILIES:
            spec = KernelSpec(family, rng.uniform(0.1, 2), random_fixed(rng))
            X = rng.uniform(-1, 1, size=(30, 3))
            K = cov_matrix(spec, X, X)
            assert np.array_equal(K, K.T)

    def test_random_point_sets(self, rng):
        """1000 random point sets of up to 50 points, with and without fixing."""
        for trial in range(1000):
            family = FAMILIES[trial % len(FAMILIES)]
            fixed = random_fixed(rng) if trial % 2 else None
            spec = KernelSpec(family, rng.uniform(0.05, 2.0), fixed)
            X = rng.uniform(-1, 1, size=(rng.integers(1, 51), 3))
            K = cov_matrix(spec, X, X)
            assert np.linalg.eigvalsh(K).min() >= -1e-8

    def test_prior_variance_is_diagonal(self, rng):
        spec = KernelSpec("matern52", 0.4, random_fixed(rng))
        X = rng.uniform(-1, 1, size=(25, 3))
        np.testing.assert_array_equal(prior_variance(spec, X), np.diag(cov_matrix(spec, X, X)))
