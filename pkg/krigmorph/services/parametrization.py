# parametrization.py
# Builds a parametrization: node selection on the surface, then one W block per mesh

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError
from . import spd
from .kernel import KernelSpec
from .selection import select_nodes
from .weights import build_weights, node_factor

logger = logging.getLogger(__name__)


@dataclass
class Parametrization:
    """Selected morphing nodes plus the precomputed weight blocks W = K(M,M)^-1 K(M,P).

    Treated as immutable once built.
    """

    kernel: KernelSpec
    nodes: np.ndarray
    node_source_indices: list
    chol: spd.CholeskyFactor
    weights: dict = field(default_factory=dict)
    selection_trace: list = field(default_factory=list)

    @property
    def node_count(self):
        return len(self.nodes)

    @property
    def mesh_ids(self):
        return list(self.weights)

    @property
    def final_variance(self):
        """Variance of the last selected node (None when the trace is empty)."""
        return self.selection_trace[-1][1] if self.selection_trace else None

    @property
    def payload_bytes(self):
        return sum(W.size * 8 for W in self.weights.values())

    def block(self, mesh_id):
        if mesh_id not in self.weights:
            raise ConfigurationError(
                f"unknown mesh id {mesh_id!r}; available: {', '.join(self.mesh_ids) or '(none)'}"
            )
        return self.weights[mesh_id]


def build_parametrization(kernel, surface, meshes, stop, chunk, max_workers=1):
    """Select nodes on `surface` and assemble W for the surface and every extra mesh.

    Returns (parametrization, selection_state).
    """
    ids = [surface.id] + [m.id for m in meshes]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise ConfigurationError(f"mesh ids must be unique, repeated: {', '.join(duplicates)}")

    state, nodes = select_nodes(kernel, surface.points, stop)
    factor = node_factor(kernel, nodes)

    weights = {}
    for mesh in [surface] + list(meshes):
        logger.info("Building W for %r (%d x %d)", mesh.id, len(nodes), mesh.point_count)
        weights[mesh.id] = build_weights(
            kernel, nodes, mesh.points, chunk, factor=factor, max_workers=max_workers
        )

    param = Parametrization(
        kernel=kernel,
        nodes=nodes,
        node_source_indices=state.selected_source_indices,
        chol=factor,
        weights=weights,
        selection_trace=list(state.trace),
    )
    return param, state

