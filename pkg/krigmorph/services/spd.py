# spd.py
# Dense symmetric-positive-definite linear algebra: Cholesky with jitter, solves, bordered extension

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from ..config import JITTER_LADDER
from ..errors import DimensionError, DomainError, SingularMatrixError, ZeroVarianceError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CholeskyFactor:
    """Lower-triangular L with L @ L.T == A + jitter * I."""

    L: np.ndarray
    jitter: float = 0.0

    @property
    def size(self):
        return self.L.shape[0]

    def reconstruct(self):
        return self.L @ self.L.T


def _square(A):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    return A


def factorize(A, regularize=True):
    """Cholesky factor of A + lambda*I, escalating lambda until it succeeds.

    Only the lower triangle of A is read. lambda walks through JITTER_LADDER
    scaled by max(diag A); with regularize=False only lambda = 0 is tried.
    """
    A = _square(A)
    m = A.shape[0]
    if m == 0:
        raise DimensionError("cannot factorize an empty matrix")

    scale = float(np.max(np.diag(A)))
    if not np.isfinite(scale) or scale <= 0:
        raise SingularMatrixError(
            "matrix has no positive diagonal entry "
            "(all morphing nodes inside the fixed region?)"
        )

    ladder = JITTER_LADDER if regularize else JITTER_LADDER[:1]
    for step in ladder:
        jitter = step * scale
        work = A + jitter * np.eye(m) if jitter else A
        try:
            L = linalg.cholesky(work, lower=True, check_finite=True)
        except linalg.LinAlgError:
            continue
        if jitter:
            logger.warning("Cholesky needed jitter %.3g on the diagonal (m=%d)", jitter, m)
        return CholeskyFactor(L=L, jitter=jitter)

    raise SingularMatrixError(
        f"{m}x{m} matrix is singular even with jitter {ladder[-1] * scale:.3g} "
        "(duplicated morphing nodes or a node inside the fixed region?)"
    )


def solve(factor, B):
    """Solve (A + jitter*I) X = B for X."""
    B = np.asarray(B, dtype=float)
    if B.shape[0] != factor.size:
        raise DimensionError(
            f"right-hand side has {B.shape[0]} rows, factor is {factor.size}x{factor.size}"
        )
    return linalg.cho_solve((factor.L, True), B, check_finite=False)


def forward(factor, B):
    """Solve L Y = B (half of a full solve); columns of Y give quadratic forms B^T A^-1 B."""
    B = np.asarray(B, dtype=float)
    if B.shape[0] != factor.size:
        raise DimensionError(
            f"right-hand side has {B.shape[0]} rows, factor is {factor.size}x{factor.size}"
        )
    return linalg.solve_triangular(factor.L, B, lower=True, check_finite=False)


def extend(factor, col, diag):
    """Factor of the bordered matrix [[A, col], [col^T, diag]].

    The factor's jitter is added to the new diagonal entry as well so the
    result still factors (bordered A) + jitter*I.
    """
    col = np.asarray(col, dtype=float).ravel()
    if diag <= 0:
        raise DomainError(f"bordered diagonal must be positive, got {diag}")
    if factor is None or factor.size == 0:
        return CholeskyFactor(L=np.array([[np.sqrt(diag)]]), jitter=0.0)
    if col.shape[0] != factor.size:
        raise DimensionError(f"border column has {col.shape[0]} entries, expected {factor.size}")

    w = linalg.solve_triangular(factor.L, col, lower=True, check_finite=False)
    pivot = diag + factor.jitter - float(w @ w)
    if not pivot > 0:
        raise ZeroVarianceError(
            f"new point has no residual variance ({pivot:.3g}); stop adding nodes"
        )

    m = factor.size
    L = np.zeros((m + 1, m + 1))
    L[:m, :m] = factor.L
    L[m, :m] = w
    L[m, m] = np.sqrt(pivot)
    return CholeskyFactor(L=L, jitter=factor.jitter)
