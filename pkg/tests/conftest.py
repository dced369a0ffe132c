"""Shared fixtures and reference implementations for the test suite."""

import json

import numpy as np
import pytest

from krigmorph.services.geometry import Box, FixedGeometry, HalfSpace, Sphere
from krigmorph.services.kernel import KernelFamily, KernelSpec, cov_matrix, prior_variance
from krigmorph.sources.mesh import Mesh, write_mesh

FAMILIES = [f.value for f in KernelFamily]


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def gaussian():
    return KernelSpec("gaussian", 1.0)


def random_fixed(rng, scale=1.0):
    """One to three random primitives around the unit cube."""
    primitives = []
    for _ in range(rng.integers(1, 4)):
        kind = rng.integers(0, 3)
        if kind == 0:
            primitives.append(Sphere(rng.uniform(-scale, scale, 3), rng.uniform(0.1, 0.5) * scale))
        elif kind == 1:
            lo = rng.uniform(-scale, scale, 3)
            primitives.append(Box(lo, lo + rng.uniform(0.1, 0.6, 3) * scale))
        else:
            normal = rng.normal(size=3)
            primitives.append(HalfSpace(rng.uniform(-scale, scale, 3) * 2, normal))
    return FixedGeometry(tuple(primitives))


def brute_force_variance(kernel, M, X):
    """sigma^2 straight from the formula with a dense solve."""
    prior = prior_variance(kernel, X)
    if len(M) == 0:
        return prior
    Kmm = cov_matrix(kernel, M, M)
    Kmx = cov_matrix(kernel, M, X)
    return prior - np.einsum("ij,ij->j", Kmx, np.linalg.solve(Kmm, Kmx))


def brute_force_select(kernel, S, max_nodes, variance_tol=None, floor=1e-12):
    """Reference greedy selection: recompute sigma^2 over all candidates every round."""
    selected = []
    trace = []
    for _ in range(max_nodes):
        variance = brute_force_variance(kernel, S[selected], S)
        variance[selected] = 0.0
        j = int(np.argmax(variance))
        r = float(variance[j])
        if r <= floor or (variance_tol is not None and r < variance_tol):
            break
        selected.append(j)
        trace.append(r)
    return selected, trace


def fibonacci_sphere(count, radius=1.0):
    """Evenly spread points on a sphere, deterministic."""
    i = np.arange(count) + 0.5
    phi = np.arccos(1 - 2 * i / count)
    golden = np.pi * (1 + 5 ** 0.5)
    theta = golden * i
    return radius * np.column_stack(
        [np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)]
    )


@pytest.fixture
def bundled_example(tmp_path):
    """500-point surface (XYZ) and a 5000-point volume (VTK unstructured grid of vertices)."""
    surface = fibonacci_sphere(500)
    rng = np.random.default_rng(7)
    direction = rng.normal(size=(5000, 3))
    direction /= np.linalg.norm(direction, axis=1)[:, None]
    volume = direction * rng.uniform(1.0, 3.0, size=(5000, 1))

    surface_path = tmp_path / "surface.xyz"
    volume_path = tmp_path / "volume.vtk"
    write_mesh(Mesh(id="surface", points=surface), surface_path)
    write_mesh(
        Mesh(
            id="volume",
            points=volume,
            cells={"CELLS": [(i,) for i in range(5000)]},
            cell_types=[1] * 5000,
            dataset="UNSTRUCTURED_GRID",
        ),
        volume_path,
    )
    fixed_path = tmp_path / "fixed.json"
    fixed_path.write_text(
        json.dumps([{"type": "halfspace", "point": [0, 0, -0.5], "normal": [0, 0, 1]}])
    )
    return {"surface": surface_path, "volume": volume_path, "fixed": fixed_path}
