# obj.py
# Wavefront OBJ: "v" records become points, "f" records become polygons

import logging

import numpy as np

from ..errors import MeshReadError
from .mesh import Mesh, MeshFormat, format_float

logger = logging.getLogger(__name__)


def _face_index(token, vertex_count, path, lineno):
    """Vertex index of an "f" token ("7", "7/1", "7//3", "-1") as a 0-based int."""
    head = token.split("/", 1)[0]
    try:
        index = int(head)
    except ValueError:
        raise MeshReadError(path, lineno, f"non-integer face index {token!r}")
    if index < 0:
        # Negative indices count back from the latest vertex
        index = vertex_count + index + 1
    if index < 1 or index > vertex_count:
        raise MeshReadError(path, lineno, f"face index {token} out of range (1..{vertex_count})")
    return index - 1


def read(path, mesh_id):
    points = []
    faces = []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            parts = line.split("#", 1)[0].split()
            if not parts:
                continue
            keyword = parts[0]
            if keyword == "v":
                if len(parts) < 4:
                    raise MeshReadError(path, lineno, "vertex needs 3 coordinates")
                try:
                    points.append([float(p) for p in parts[1:4]])
                except ValueError:
                    raise MeshReadError(path, lineno, f"non-numeric coordinate in {line.strip()!r}")
                if not np.all(np.isfinite(points[-1])):
                    raise MeshReadError(path, lineno, f"non-finite coordinate in {line.strip()!r}")
            elif keyword == "f":
                if len(parts) < 2:
                    raise MeshReadError(path, lineno, "face without vertices")
                faces.append(tuple(_face_index(t, len(points), path, lineno) for t in parts[1:]))
            # vt, vn, g, o, usemtl, s... carry nothing we morph

    if not points:
        raise MeshReadError(path, None, "no vertices found")
    cells = {"POLYGONS": tuple(faces)} if faces else {}
    return Mesh(id=mesh_id, points=points, cells=cells, format=MeshFormat.OBJ)


def write(mesh, path):
    dropped = [name for name, conn in mesh.cells.items() if conn and name != "POLYGONS"]
    if dropped:
        logger.warning("OBJ output %s drops %s connectivity of mesh %r", path, "/".join(dropped), mesh.id)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for x, y, z in mesh.points:
            f.write(f"v {format_float(x)} {format_float(y)} {format_float(z)}\n")
        for face in mesh.cells.get("POLYGONS", ()):
            f.write("f " + " ".join(str(i + 1) for i in face) + "\n")
