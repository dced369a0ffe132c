"""Tests for applying node displacements to meshes and arbitrary points."""

import numpy as np
import pytest

from krigmorph.errors import DimensionError, DomainError
from krigmorph.services.geometry import FixedGeometry, Sphere
from krigmorph.services.kernel import KernelSpec
from krigmorph.services.morph import apply_weights, displacement_at, morph_mesh
from krigmorph.services.parametrization import build_parametrization
from krigmorph.services.selection import StopCriteria
from krigmorph.services.weights import build_weights
from krigmorph.sources.mesh import Mesh

from conftest import FAMILIES, random_fixed


class TestInterpolation:
    def test_nodes_move_exactly(self, rng):
        """Prescribed node displacements are reproduced at the nodes."""
        for trial in range(100):
            family = FAMILIES[trial % len(FAMILIES)]
            fixed = random_fixed(rng, scale=3.0) if trial % 2 else None
            kernel = KernelSpec(family, rng.uniform(0.3, 1.0), fixed)
            S = rng.uniform(0, 4, size=(60, 3))
            if fixed is not None:
                S = S[fixed.distance(S) > 0.3]
                if len(S) == 0:
                    continue
            param, _ = build_parametrization(
                kernel, Mesh(id="s", points=S), [], StopCriteria(max_nodes=8), chunk=16
            )
            d = rng.normal(size=(param.node_count, 3))
            moved = apply_weights(d, param.block("s"))[param.node_source_indices]
            np.testing.assert_allclose(moved, d, atol=1e-8)

    def test_fixed_region_stays_put(self, rng):
        fixed = FixedGeometry((Sphere((0, 0, 0), 1.0),))
        kernel = KernelSpec("matern52", 0.8, fixed)
        M = rng.uniform(1.5, 3, size=(8, 3))
        inside = rng.uniform(-0.5, 0.5, size=(30, 3))
        W = build_weights(kernel, M, inside, chunk=10)
        moved = apply_weights(rng.normal(size=(8, 3)), W)
        assert np.all(np.abs(moved) <= 1e-12)

    def test_pointwise_matches_weights(self, rng):
        kernel = KernelSpec("gaussian", 0.6, FixedGeometry((Sphere((0, 0, 0), 0.5),)))
        M = rng.uniform(1, 3, size=(10, 3))
        X = rng.uniform(0, 4, size=(25, 3))
        d = rng.normal(size=(len(M), 3))
        np.testing.assert_allclose(
            displacement_at(kernel, M, d, X), apply_weights(d, build_weights(kernel, M, X, chunk=7)),
            atol=1e-10,
        )


class TestMorphMesh:
    @pytest.fixture
    def param(self, gaussian):
        surface = Mesh(id="surface", points=[[0, 0, 0], [1, 0, 0], [2, 0, 0]])
        volume = Mesh(id="volume", points=[[0.5, 0, 0], [2, 0, 0], [9, 9, 9], [0.5, 0, 0]])
        param, _ = build_parametrization(gaussian, surface, [volume], StopCriteria(max_nodes=3), chunk=2)
        return param

    def test_shared_coordinates_move_alike(self, param, rng):
        volume = Mesh(id="volume", points=[[0.5, 0, 0], [2, 0, 0], [9, 9, 9], [0.5, 0, 0]])
        d = rng.normal(size=(param.node_count, 3))
        moved = morph_mesh(param, "volume", volume, d)
        surface = morph_mesh(param, "surface", Mesh(id="surface", points=[[0, 0, 0], [1, 0, 0], [2, 0, 0]]), d)
        np.testing.assert_allclose(moved.points[0], moved.points[3], atol=1e-14)
        np.testing.assert_allclose(moved.points[1], surface.points[2], atol=1e-12)

    def test_zero_displacement_is_identity(self, param):
        volume = Mesh(id="volume", points=[[0.5, 0, 0], [2, 0, 0], [9, 9, 9], [0.5, 0, 0]])
        moved = morph_mesh(param, "volume", volume, np.zeros((param.node_count, 3)))
        assert moved == volume

    def test_point_count_mismatch(self, param):
        with pytest.raises(DimensionError):
            morph_mesh(param, "volume", Mesh(id="volume", points=[[0, 0, 0]]), np.zeros((3, 3)))

    def test_bad_displacements(self, param):
        W = param.block("surface")
        with pytest.raises(DimensionError):
            apply_weights(np.zeros((2, 3)), W)
        with pytest.raises(DomainError):
            apply_weights(np.full((3, 3), np.nan), W)
