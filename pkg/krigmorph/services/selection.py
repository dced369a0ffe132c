# selection.py
# Greedy selection of morphing nodes by maximum posterior variance (pivoted Cholesky form)

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import NEGATIVE_VARIANCE_TOLERANCE, VARIANCE_FLOOR
from ..errors import (
    ConfigurationError,
    InternalConsistencyError,
    NoSelectableCandidateError,
    ZeroVarianceError,
)
from . import spd
from .geometry import as_points
from .kernel import cross_covariance, modifier, prior_variance

logger = logging.getLogger(__name__)

# Column capacity added at a time when selection has no node limit
_GROW_BY = 64


@dataclass(frozen=True)
class StopCriteria:
    """When to stop adding nodes. At least one criterion must be set."""

    max_nodes: Optional[int] = None
    variance_tol: Optional[float] = None

    def __post_init__(self):
        if self.max_nodes is None and self.variance_tol is None:
            raise ConfigurationError("set max_nodes, variance_tol, or both")
        if self.max_nodes is not None and self.max_nodes < 1:
            raise ConfigurationError("max-nodes must be positive")
        if self.variance_tol is not None and not self.variance_tol >= 0:
            raise ConfigurationError("variance-tol must be non-negative")


@dataclass
class SelectionState:
    """Progress of a selection run over deduplicated candidates.

    `selected` holds indices into `candidates`; `source_indices` maps those back
    to the caller's original point list.
    """

    candidates: np.ndarray
    source_indices: np.ndarray
    residual_variance: np.ndarray
    kernel: object
    selected: list = field(default_factory=list)
    trace: list = field(default_factory=list)
    factor: Optional[spd.CholeskyFactor] = None
    _columns: Optional[np.ndarray] = None

    @property
    def count(self):
        return len(self.selected)

    @property
    def factor_rows(self):
        """Rows of the partial pivoted-Cholesky factor, shape (n, t)."""
        if self._columns is None:
            return np.zeros((len(self.candidates), 0))
        return self._columns[: self.count].T

    @property
    def max_residual(self):
        return float(self.residual_variance.max())

    @property
    def selected_source_indices(self):
        return [int(self.source_indices[i]) for i in self.selected]


def deduplicate(points):
    """Drop exact coordinate duplicates, keeping the first occurrence and the original order.

    Returns the unique points and their indices in the input.
    """
    points = as_points(points)
    _, first = np.unique(points, axis=0, return_index=True)
    first.sort()
    return points[first], first


def _reserve(state, needed, max_nodes):
    """Make room for `needed` factor columns."""
    n = len(state.candidates)
    if state._columns is None:
        cap = max_nodes if max_nodes is not None else _GROW_BY
        state._columns = np.empty((min(cap, n), n))
    elif needed > state._columns.shape[0]:
        grown = np.empty((min(needed + _GROW_BY, n), n))
        grown[: state.count] = state._columns[: state.count]
        state._columns = grown


def select_nodes(kernel, S, stop):
    """Greedily pick morphing nodes from candidate points S.

    Each round takes the candidate with the largest residual (posterior)
    variance, lowest index on ties, and updates every residual with one new
    column of the pivoted Cholesky factor of K(S, S). No n x n matrix is formed.

    Returns (state, M) where M are the selected node coordinates in order.
    """
    candidates, source = deduplicate(S)
    n = len(candidates)
    if n == 0:
        raise NoSelectableCandidateError("no candidate points")

    f = modifier(kernel, candidates)
    prior = prior_variance(kernel, candidates, f)
    if not np.any(prior > VARIANCE_FLOOR):
        raise NoSelectableCandidateError(
            "no selectable candidate: every surface point lies in the fixed region"
        )

    state = SelectionState(
        candidates=candidates,
        source_indices=source,
        residual_variance=prior.copy(),
        kernel=kernel,
    )
    max_nodes = stop.max_nodes if stop.max_nodes is None else min(stop.max_nodes, n)
    residual = state.residual_variance

    while max_nodes is None or state.count < max_nodes:
        j = int(np.argmax(residual))
        r = float(residual[j])
        if r <= VARIANCE_FLOOR:
            logger.info("Candidates exhausted after %d nodes", state.count)
            break
        if stop.variance_tol is not None and r < stop.variance_tol:
            break

        x = candidates[j : j + 1]
        t = state.count
        cross = cross_covariance(kernel, candidates, x, fx=f, fy=f[j : j + 1])[:, 0]

        # Keep the dense factor of K(M, M) alongside the pivoted rows
        try:
            factor = spd.extend(state.factor, cross[state.selected], prior[j])
        except ZeroVarianceError:
            logger.info("Residual variance vanished at node %d; stopping", t + 1)
            break

        _reserve(state, t + 1, max_nodes)
        column = cross
        if t:
            column -= state._columns[:t].T @ state._columns[:t, j]
        column /= np.sqrt(r)
        state._columns[t] = column

        residual -= column * column
        residual[j] = 0.0
        lowest = residual.min()
        if lowest < -NEGATIVE_VARIANCE_TOLERANCE:
            raise InternalConsistencyError(
                f"residual variance {lowest:.3g} is negative; kernel matrix is not PSD"
            )
        np.maximum(residual, 0.0, out=residual)

        state.factor = factor
        state.selected.append(j)
        state.trace.append((int(source[j]), r))
        logger.debug("Node %d: candidate %d, variance %.6g", t + 1, source[j], r)

    logger.info(
        "Selected %d nodes from %d candidates, max residual variance %.6g",
        state.count, n, state.max_residual,
    )
    return state, candidates[state.selected]


def posterior_variance(kernel, M, X, factor=None, chunk=4096):
    """sigma^2(x) = K(x,x) - K(x,M) K(M,M)^-1 K(M,x), clamped to [0, K(x,x)].

    X is processed in blocks of `chunk` points.
    """
    X = as_points(X)
    fx = modifier(kernel, X)
    prior = prior_variance(kernel, X, fx)
    M = np.asarray(M, dtype=float).reshape(-1, 3)
    if len(M) == 0:
        return prior

    if factor is None:
        factor = spd.factorize(cross_covariance(kernel, M, M))
    fm = modifier(kernel, M)

    variance = np.empty(len(X))
    for start in range(0, len(X), chunk):
        stop = min(start + chunk, len(X))
        V = spd.forward(factor, cross_covariance(kernel, M, X[start:stop], fx=fm, fy=fx[start:stop]))
        variance[start:stop] = prior[start:stop] - np.einsum("ij,ij->j", V, V)
    return np.clip(variance, 0.0, prior)
