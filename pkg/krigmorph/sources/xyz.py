# xyz.py
# Plain point lists: one "x y z" triple per line, "#" starts a comment

import logging

import numpy as np

from ..errors import MeshReadError
from .mesh import Mesh, MeshFormat, format_float

logger = logging.getLogger(__name__)


def read(path, mesh_id):
    points = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.replace(",", " ").split()
            if len(parts) != 3:
                raise MeshReadError(path, lineno, f"expected 3 coordinates, found {len(parts)}")
            try:
                points.append([float(p) for p in parts])
            except ValueError:
                raise MeshReadError(path, lineno, f"non-numeric coordinate in {text!r}")
            if not np.all(np.isfinite(points[-1])):
                raise MeshReadError(path, lineno, f"non-finite coordinate in {text!r}")

    if not points:
        raise MeshReadError(path, None, "no points found")
    return Mesh(id=mesh_id, points=points, format=MeshFormat.XYZ)


def write(mesh, path):
    if mesh.has_cells:
        logger.warning("XYZ output %s drops the connectivity of mesh %r", path, mesh.id)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for x, y, z in mesh.points:
            f.write(f"{format_float(x)} {format_float(y)} {format_float(z)}\n")
