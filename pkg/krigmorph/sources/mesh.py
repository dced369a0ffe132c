# mesh.py
# Mesh container and format dispatch for reading/writing point sets

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from types import MappingProxyType
from typing import Optional

import numpy as np

from ..config import FLOAT_DIGITS
from ..errors import ConfigurationError, DimensionError, DomainError, MeshReadError

logger = logging.getLogger(__name__)


class MeshFormat(str, Enum):
    VTK = "vtk"
    OBJ = "obj"
    XYZ = "xyz"


EXTENSIONS = {
    ".vtk": MeshFormat.VTK,
    ".obj": MeshFormat.OBJ,
    ".xyz": MeshFormat.XYZ,
    ".txt": MeshFormat.XYZ,
}

# Connectivity sections, in the order they are written
POLYDATA_SECTIONS = ("VERTICES", "LINES", "POLYGONS", "TRIANGLE_STRIPS")
GRID_SECTIONS = ("CELLS",)


def _frozen(array):
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Mesh:
    """Ordered 3D points with optional connectivity and point fields.

    `cells` maps a VTK connectivity section name to a tuple of index tuples;
    `cell_types` is only used for UNSTRUCTURED_GRID.
    """

    id: str
    points: np.ndarray
    cells: dict = field(default_factory=dict)
    cell_types: Optional[tuple] = None
    point_fields: dict = field(default_factory=dict)
    dataset: str = "POLYDATA"
    format: Optional[MeshFormat] = None

    def __post_init__(self):
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3:
            raise DimensionError(f"mesh {self.id!r}: points must be n x 3, got shape {points.shape}")
        if len(points) < 1:
            raise DomainError(f"mesh {self.id!r} has no points")
        if not np.all(np.isfinite(points)):
            raise DomainError(f"mesh {self.id!r} has non-finite coordinates")
        object.__setattr__(self, "points", _frozen(points))

        cells = {}
        for name, conn in self.cells.items():
            conn = tuple(tuple(int(i) for i in cell) for cell in conn)
            for cell in conn:
                if any(i < 0 or i >= len(points) for i in cell):
                    raise DomainError(
                        f"mesh {self.id!r}: {name} cell {cell} references a point out of range"
                    )
            cells[name] = conn
        object.__setattr__(self, "cells", MappingProxyType(cells))

        if self.cell_types is not None:
            object.__setattr__(self, "cell_types", tuple(int(t) for t in self.cell_types))

        fields = {}
        for name, values in self.point_fields.items():
            values = np.array(values, dtype=float)
            if values.shape != (len(points),):
                raise DimensionError(
                    f"mesh {self.id!r}: field {name!r} has shape {values.shape}, "
                    f"expected ({len(points)},)"
                )
            if not np.all(np.isfinite(values)):
                raise DomainError(f"mesh {self.id!r}: field {name!r} has non-finite values")
            fields[name] = _frozen(values)
        object.__setattr__(self, "point_fields", MappingProxyType(fields))

    @property
    def point_count(self):
        return len(self.points)

    @property
    def has_cells(self):
        return any(len(conn) for conn in self.cells.values())

    def with_field(self, name, values):
        fields = dict(self.point_fields)
        fields[name] = values
        return replace(self, point_fields=fields)

    def __eq__(self, other):
        if not isinstance(other, Mesh):
            return NotImplemented
        return (
            np.array_equal(self.points, other.points)
            and dict(self.cells) == dict(other.cells)
            and self.cell_types == other.cell_types
            and self.point_fields.keys() == other.point_fields.keys()
            and all(np.array_equal(v, other.point_fields[k]) for k, v in self.point_fields.items())
        )

    __hash__ = None


def detect_format(path, fmt=None):
    """Resolve an explicit format name or guess it from the file extension."""
    if fmt not in (None, "auto"):
        try:
            return MeshFormat(fmt)
        except ValueError:
            raise ConfigurationError(f"unknown mesh format {fmt!r}")
    suffix = Path(path).suffix.lower()
    if suffix not in EXTENSIONS:
        raise ConfigurationError(
            f"cannot tell the mesh format of {path} (use one of {', '.join(EXTENSIONS)})"
        )
    return EXTENSIONS[suffix]


def read_mesh(path, fmt=None, mesh_id=None):
    """Read a mesh; points keep file order. `mesh_id` defaults to the file stem."""
    from . import obj, vtk, xyz

    path = Path(path)
    fmt = detect_format(path, fmt)
    readers = {MeshFormat.VTK: vtk.read, MeshFormat.OBJ: obj.read, MeshFormat.XYZ: xyz.read}
    try:
        mesh = readers[fmt](path, mesh_id or path.stem)
    except UnicodeDecodeError as e:
        raise MeshReadError(path, None, f"not UTF-8 text (byte {e.start}: {e.reason})")
    except OSError as e:
        raise ConfigurationError(f"cannot read {path}: {e}")
    logger.info("Read %s: %d points (%s)", path, mesh.point_count, fmt.value)
    return mesh


def write_mesh(mesh, path, fmt=None):
    """Write a mesh with 17 significant digits per coordinate."""
    from . import obj, vtk, xyz

    path = Path(path)
    fmt = detect_format(path, fmt)
    if mesh.point_fields and fmt is not MeshFormat.VTK:
        raise ConfigurationError(
            f"point fields ({', '.join(mesh.point_fields)}) can only be written to VTK, not {fmt.value}"
        )
    writers = {MeshFormat.VTK: vtk.write, MeshFormat.OBJ: obj.write, MeshFormat.XYZ: xyz.write}
    try:
        writers[fmt](mesh, path)
    except OSError as e:
        raise ConfigurationError(f"cannot write {path}: {e}")
    logger.info("Wrote %s: %d points (%s)", path, mesh.point_count, fmt.value)


def displace_points(mesh, displacement):
    """New mesh with point_i += displacement_i; connectivity and fields unchanged.

    Rows of exact zeros leave the coordinate untouched, so -0.0 survives.
    """
    D = np.asarray(displacement, dtype=float)
    if D.shape != mesh.points.shape:
        raise DimensionError(
            f"displacement has shape {D.shape}, mesh {mesh.id!r} has {mesh.point_count} points"
        )
    moved = np.where(D == 0.0, mesh.points, mesh.points + D)
    return replace(mesh, points=moved)


def format_float(value):
    return f"{value:.{FLOAT_DIGITS}g}"
