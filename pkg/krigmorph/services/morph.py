# morph.py
# Applying node displacements: m(P) = d^T W for stored blocks, m(x) for arbitrary points

import numpy as np

from ..errors import DimensionError, DomainError
from ..sources.mesh import displace_points
from . import spd
from .geometry import as_points
from .kernel import cross_covariance, modifier
from .weights import node_factor


def check_displacements(d, node_count):
    """Validate an m x 3 displacement matrix and return it as float64."""
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[1] != 3:
        raise DimensionError(f"displacements must have 3 columns, got shape {d.shape}")
    if d.shape[0] != node_count:
        raise DimensionError(
            f"displacements have {d.shape[0]} rows but the parametrization has {node_count} nodes"
        )
    if not np.all(np.isfinite(d)):
        raise DomainError("displacements must be finite")
    return d


def apply_weights(d, W):
    """Displacement of every point of a W block; row i belongs to point i."""
    d = check_displacements(d, W.shape[0])
    return W.T @ d


def displacement_at(kernel, M, d, X, factor=None):
    """Evaluate m(x) = d^T K(M,M)^-1 K(M,x) at arbitrary points X."""
    M = as_points(M)
    X = as_points(X)
    d = check_displacements(d, len(M))
    if factor is None:
        factor = node_factor(kernel, M)
    # Solve against d once (m x 3) instead of against K(M, X)
    coefficients = spd.solve(factor, d)
    return cross_covariance(kernel, X, M, fy=modifier(kernel, M)) @ coefficients


def morph_mesh(param, mesh_id, mesh, d):
    """Displace `mesh` with the stored W block `mesh_id`."""
    W = param.block(mesh_id)
    if W.shape[1] != mesh.point_count:
        raise DimensionError(
            f"mesh {mesh.id!r} has {mesh.point_count} points but block {mesh_id!r} "
            f"was built for {W.shape[1]}"
        )
    return displace_points(mesh, apply_weights(d, W))
