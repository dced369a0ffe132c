# weights.py
# Weight matrix W = K(M,M)^-1 K(M,P) assembled in column blocks, and displacement fitting

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed

import numpy as np

from ..errors import DimensionError, DomainError, SingularMatrixError
from . import spd
from .geometry import as_points
from .kernel import cross_covariance, modifier

logger = logging.getLogger(__name__)

# Relative size of the smallest Cholesky pivot below which a fit is rank-deficient
_RANK_TOLERANCE = 1e-7


def node_factor(kernel, M):
    """Cholesky factor of K(M, M)."""
    M = as_points(M)
    return spd.factorize(cross_covariance(kernel, M, M))


def _solve_block(kernel, M, fm, factor, P, start, stop, W):
    block = cross_covariance(kernel, M, P[start:stop], fx=fm)
    W[:, start:stop] = spd.solve(factor, block)
    return stop - start


def build_weights(kernel, M, P, chunk, factor=None, max_workers=1):
    """W = K(M,M)^-1 K(M,P), processing P in blocks of at most `chunk` columns.

    Blocks are independent; with max_workers > 1 they run on a thread pool and
    each writes its own column slice of W.
    """
    if chunk < 1:
        raise DomainError(f"chunk must be positive, got {chunk}")
    M = as_points(M)
    P = as_points(P)
    if factor is None:
        factor = node_factor(kernel, M)
    fm = modifier(kernel, M)

    W = np.empty((len(M), len(P)))
    blocks = [(start, min(start + chunk, len(P))) for start in range(0, len(P), chunk)]

    if max_workers <= 1 or len(blocks) <= 1:
        for start, stop in blocks:
            _solve_block(kernel, M, fm, factor, P, start, stop, W)
        return W

    total = len(P)
    completed = 0
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = [
            executor.submit(_solve_block, kernel, M, fm, factor, P, start, stop, W)
            for start, stop in blocks
        ]
        for future in as_completed(futures):
            completed += future.result()
            logger.debug("W columns: %d/%d", completed, total)
    return W


def fit_displacements(kernel, M, targets_points, targets_values, factor=None):
    """Node displacements d minimizing sum ||A^T d - T||^2, A = K(M,M)^-1 K(M,Q).

    Solved through the normal equations (A A^T) d = A T. Returns an m x 3 array.
    """
    M = as_points(M)
    Q = as_points(targets_points)
    T = np.asarray(targets_values, dtype=float).reshape(-1, 3)
    if len(Q) == 0:
        raise DomainError("need at least one target")
    if len(T) != len(Q):
        raise DimensionError(f"{len(Q)} target points but {len(T)} target displacements")
    if not np.all(np.isfinite(T)):
        raise DomainError("target displacements must be finite")
    if len(np.unique(Q, axis=0)) != len(Q):
        raise DomainError("target points must be distinct")

    A = build_weights(kernel, M, Q, chunk=max(len(Q), 1), factor=factor)
    normal = A @ A.T
    try:
        normal_factor = spd.factorize(normal, regularize=False)
    except SingularMatrixError:
        normal_factor = None
    if normal_factor is not None:
        pivots = np.diag(normal_factor.L)
        if pivots.min() <= _RANK_TOLERANCE * pivots.max():
            normal_factor = None
    if normal_factor is None:
        raise SingularMatrixError(
            f"displacement fit is rank-deficient ({len(Q)} targets, {len(M)} nodes): "
            "targets are too far from some nodes or too few to determine every node"
        )
    return spd.solve(normal_factor, A @ T)
