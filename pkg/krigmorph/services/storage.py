# storage.py
# Reading and writing parametrization (.mprm) files: one UTF-8 JSON document

import base64
import binascii
import json
import logging

import numpy as np

from ..config import FORMAT_VERSION
from ..errors import ConfigurationError, KrigmorphError, ParamFileError
from .geometry import FixedGeometry
from .kernel import KernelSpec
from .parametrization import Parametrization
from .weights import node_factor

logger = logging.getLogger(__name__)


def encode_weights(W):
    """Row-major little-endian float64 bytes, base64 encoded."""
    return base64.b64encode(np.ascontiguousarray(W, dtype="<f8").tobytes()).decode("ascii")


def decode_weights(text, rows, cols, mesh_id):
    try:
        raw = base64.b64decode(text, validate=True)
    except (binascii.Error, ValueError, TypeError) as e:
        raise ParamFileError(f"mesh {mesh_id!r}: weights payload is not valid base64 ({e})")
    expected = rows * cols * 8
    if len(raw) != expected:
        raise ParamFileError(
            f"mesh {mesh_id!r}: weights payload size {len(raw)} bytes, "
            f"expected {expected} ({rows} nodes x {cols} points x 8)"
        )
    return np.frombuffer(raw, dtype="<f8").astype(float).reshape(rows, cols)


def to_document(param):
    """The JSON-ready dictionary for a parametrization."""
    kernel = param.kernel
    return {
        "format_version": FORMAT_VERSION,
        "kernel": kernel.to_json(),
        "fixed": kernel.fixed.to_json() if kernel.fixed is not None else None,
        "nodes": param.nodes.tolist(),
        "selection_trace": [
            {"index": int(index), "variance": float(variance)}
            for index, variance in param.selection_trace
        ],
        "meshes": [
            {"id": mesh_id, "point_count": int(W.shape[1]), "weights_b64": encode_weights(W)}
            for mesh_id, W in param.weights.items()
        ],
        "jitter": float(param.chol.jitter),
    }


def save_parametrization(param, path):
    text = json.dumps(to_document(param), indent=2, ensure_ascii=False) + "\n"
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise ConfigurationError(f"cannot write {path}: {e}")
    logger.info("Saved parametrization to %s (%d nodes)", path, param.node_count)


def _require(doc, key, kind):
    if key not in doc:
        raise ParamFileError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParamFileError(f"field {key!r} has the wrong type")
    return value


def from_document(doc):
    """Validate a parsed document and rebuild the Parametrization."""
    if not isinstance(doc, dict):
        raise ParamFileError("parametrization must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise ParamFileError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")

    kernel_doc = _require(doc, "kernel", dict)
    fixed_doc = doc.get("fixed")
    try:
        fixed = FixedGeometry.from_json(fixed_doc) if fixed_doc is not None else None
        kernel = KernelSpec(kernel_doc.get("family"), kernel_doc.get("theta"), fixed)
    except KrigmorphError as e:
        raise ParamFileError(f"invalid kernel: {e}")

    try:
        nodes = np.array(_require(doc, "nodes", list), dtype=float).reshape(-1, 3)
    except (TypeError, ValueError):
        raise ParamFileError("nodes must be a list of [x, y, z] triples")
    if len(nodes) == 0:
        raise ParamFileError("parametrization has no nodes")
    if not np.all(np.isfinite(nodes)):
        raise ParamFileError("nodes must be finite numbers")

    trace = []
    for step in _require(doc, "selection_trace", list):
        try:
            trace.append((int(step["index"]), float(step["variance"])))
        except (KeyError, TypeError, ValueError):
            raise ParamFileError("selection_trace entries need integer index and number variance")

    weights = {}
    for block in _require(doc, "meshes", list):
        if not isinstance(block, dict):
            raise ParamFileError("meshes entries must be objects")
        mesh_id = block.get("id")
        count = block.get("point_count")
        if not isinstance(mesh_id, str) or not isinstance(count, int) or count < 1:
            raise ParamFileError("meshes entries need a string id and a positive point_count")
        if mesh_id in weights:
            raise ParamFileError(f"mesh id {mesh_id!r} appears twice")
        weights[mesh_id] = decode_weights(block.get("weights_b64", ""), len(nodes), count, mesh_id)

    stored_jitter = doc.get("jitter")
    if stored_jitter is not None and (
        isinstance(stored_jitter, bool) or not isinstance(stored_jitter, (int, float))
    ):
        raise ParamFileError(f"field 'jitter' must be a number, got {stored_jitter!r}")
    factor = node_factor(kernel, nodes)
    if stored_jitter is not None and float(stored_jitter) != factor.jitter:
        logger.warning("Stored jitter %g differs from recomputed %g", stored_jitter, factor.jitter)

    return Parametrization(
        kernel=kernel,
        nodes=nodes,
        node_source_indices=[index for index, _ in trace],
        chol=factor,
        weights=weights,
        selection_trace=trace,
    )


def load_parametrization(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise ParamFileError(f"{path}:{e.lineno}: not a JSON document: {e.msg}")
    except UnicodeDecodeError:
        raise ParamFileError(f"{path}: not UTF-8 text")
    except OSError as e:
        raise ConfigurationError(f"cannot read {path}: {e}")
    try:
        return from_document(doc)
    except ParamFileError as e:
        raise ParamFileError(f"{path}: {e}")
