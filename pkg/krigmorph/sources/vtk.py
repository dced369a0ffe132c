# vtk.py
# Legacy VTK, ASCII flavour: POLYDATA and UNSTRUCTURED_GRID with point scalars

import logging

import numpy as np

from ..config import VTK_TITLE
from ..errors import ConfigurationError, MeshReadError
from .mesh import GRID_SECTIONS, POLYDATA_SECTIONS, Mesh, MeshFormat, format_float

logger = logging.getLogger(__name__)

DATASET_TYPES = ("POLYDATA", "UNSTRUCTURED_GRID")

# Attribute arrays we read past without keeping: keyword -> values per tuple
_SKIPPED_ATTRIBUTES = {"VECTORS": 3, "NORMALS": 3, "TENSORS": 9}


class _Tokens:
    """Whitespace tokens of the body of a VTK file, each with its line number."""

    def __init__(self, path, lines, first_lineno):
        self.path = path
        self.items = []
        for lineno, line in enumerate(lines, start=first_lineno):
            for token in line.split():
                self.items.append((token, lineno))
        self.pos = 0

    def done(self):
        return self.pos >= len(self.items)

    def peek(self):
        return self.items[self.pos][0] if not self.done() else None

    def lineno(self):
        if self.done():
            return self.items[-1][1] if self.items else None
        return self.items[self.pos][1]

    def error(self, message):
        return MeshReadError(self.path, self.lineno(), message)

    def next(self, what="token"):
        if self.done():
            raise self.error(f"unexpected end of file, expected {what}")
        token = self.items[self.pos][0]
        self.pos += 1
        return token

    def integer(self, what):
        token = self.next(what)
        try:
            return int(token)
        except ValueError:
            self.pos -= 1
            raise self.error(f"expected integer {what}, got {token!r}")

    def floats(self, count, what):
        values = np.empty(count)
        for i in range(count):
            token = self.next(what)
            try:
                values[i] = float(token)
            except ValueError:
                self.pos -= 1
                raise self.error(f"non-numeric value {token!r} in {what}")
            if not np.isfinite(values[i]):
                self.pos -= 1
                raise self.error(f"non-finite value {token!r} in {what}")
        return values

    def integers(self, count, what):
        return [self.integer(what) for _ in range(count)]


class _Info:
    """What the reader has collected so far."""

    def __init__(self):
        self.dataset = None
        self.points = None
        self.cells = {}
        self.cell_types = None
        self.point_fields = {}
        self.section = None
        self.section_size = 0


def _read_header(path, lines):
    if len(lines) < 3:
        raise MeshReadError(path, len(lines) or 1, "truncated VTK header")
    if not lines[0].lower().startswith("# vtk datafile"):
        raise MeshReadError(path, 1, "missing '# vtk DataFile Version' header")
    data_type = lines[2].strip().upper()
    if data_type == "BINARY":
        raise MeshReadError(path, 3, "binary legacy VTK is not supported, only ASCII")
    if data_type != "ASCII":
        raise MeshReadError(path, 3, f"unknown VTK data type {lines[2].strip()!r}")


def _read_connectivity(tokens, info, name):
    where = tokens.lineno()
    count = tokens.integer(f"{name} count")
    size = tokens.integer(f"{name} size")
    if tokens.peek() == "OFFSETS":
        # Version 5 layout: OFFSETS/CONNECTIVITY arrays
        tokens.next()
        tokens.next("offsets type")
        offsets = tokens.integers(count, f"{name} offsets")
        if tokens.next("CONNECTIVITY") != "CONNECTIVITY":
            raise tokens.error("expected CONNECTIVITY after OFFSETS")
        tokens.next("connectivity type")
        flat = tokens.integers(size, f"{name} connectivity")
        # Offsets bracket each cell: 0 first, size last, never decreasing
        if (
            count < 1
            or offsets[0] != 0
            or offsets[-1] != size
            or any(b < a for a, b in zip(offsets, offsets[1:]))
        ):
            raise MeshReadError(
                tokens.path, where, f"{name} offsets must rise from 0 to {size}, got {offsets}"
            )
        cells = tuple(tuple(flat[offsets[i]:offsets[i + 1]]) for i in range(count - 1))
    else:
        cells = []
        consumed = 0
        for _ in range(count):
            k = tokens.integer(f"{name} cell length")
            cells.append(tuple(tokens.integers(k, f"{name} cell")))
            consumed += k + 1
        if consumed != size:
            raise MeshReadError(tokens.path, where, f"{name} size {size} does not match its contents ({consumed})")
        cells = tuple(cells)

    n = len(info.points)
    for cell in cells:
        bad = [i for i in cell if i < 0 or i >= n]
        if bad:
            raise MeshReadError(tokens.path, where, f"{name} index {bad[0]} out of range (0..{n - 1})")
    info.cells[name] = cells


def _read_scalars(tokens, info):
    name = tokens.next("scalar name")
    tokens.next("scalar type")
    components = 1
    if tokens.peek() is not None and tokens.peek().isdigit():
        components = tokens.integer("component count")
    if tokens.peek() == "LOOKUP_TABLE":
        tokens.next()
        tokens.next("lookup table name")
    values = tokens.floats(info.section_size * components, f"SCALARS {name}")
    if info.section != "POINT_DATA":
        logger.warning("%s: skipping cell scalars %r", tokens.path, name)
    elif components != 1:
        logger.warning("%s: skipping %d-component scalars %r", tokens.path, components, name)
    else:
        info.point_fields[name] = values


def _read_field(tokens, info):
    tokens.next("field name")
    arrays = tokens.integer("field array count")
    for _ in range(arrays):
        name = tokens.next("array name")
        components = tokens.integer("array components")
        tuples = tokens.integer("array tuples")
        tokens.next("array type")
        tokens.floats(components * tuples, f"FIELD array {name}")
        logger.warning("%s: skipping FIELD array %r", tokens.path, name)


def read(path, mesh_id):
    with open(path, "r", encoding="utf-8") as f:
        lines = f.read().splitlines()
    _read_header(path, lines)

    tokens = _Tokens(path, lines[3:], first_lineno=4)
    info = _Info()

    if tokens.next("DATASET").upper() != "DATASET":
        raise tokens.error("expected DATASET after the header")
    info.dataset = tokens.next("dataset type").upper()
    if info.dataset not in DATASET_TYPES:
        tokens.pos -= 1
        raise tokens.error(
            f"unsupported dataset type {info.dataset} (only {' and '.join(DATASET_TYPES)})"
        )

    while not tokens.done():
        keyword = tokens.next().upper()

        if keyword == "POINTS":
            count = tokens.integer("point count")
            tokens.next("point type")
            info.points = tokens.floats(3 * count, "POINTS").reshape(count, 3)
        elif keyword in POLYDATA_SECTIONS + GRID_SECTIONS:
            if info.points is None:
                raise tokens.error(f"{keyword} before POINTS")
            _read_connectivity(tokens, info, keyword)
        elif keyword == "CELL_TYPES":
            count = tokens.integer("cell type count")
            info.cell_types = tuple(tokens.integers(count, "CELL_TYPES"))
        elif keyword in ("POINT_DATA", "CELL_DATA"):
            info.section = keyword
            info.section_size = tokens.integer(f"{keyword} count")
            if keyword == "POINT_DATA" and info.points is not None and info.section_size != len(info.points):
                raise tokens.error(
                    f"POINT_DATA {info.section_size} does not match {len(info.points)} points"
                )
        elif keyword == "SCALARS":
            if info.section is None:
                raise tokens.error("SCALARS outside POINT_DATA/CELL_DATA")
            _read_scalars(tokens, info)
        elif keyword in _SKIPPED_ATTRIBUTES:
            name = tokens.next("attribute name")
            tokens.next("attribute type")
            tokens.floats(info.section_size * _SKIPPED_ATTRIBUTES[keyword], f"{keyword} {name}")
            logger.warning("%s: skipping %s %r", path, keyword, name)
        elif keyword == "LOOKUP_TABLE":
            tokens.next("lookup table name")
            size = tokens.integer("lookup table size")
            tokens.floats(4 * size, "LOOKUP_TABLE")
        elif keyword == "FIELD":
            _read_field(tokens, info)
        else:
            tokens.pos -= 1
            raise tokens.error(f"unexpected keyword {keyword!r}")

    if info.points is None or len(info.points) == 0:
        raise MeshReadError(path, None, "no POINTS section")
    if "CELLS" in info.cells and (info.cell_types is None or len(info.cell_types) != len(info.cells["CELLS"])):
        raise MeshReadError(path, None, "CELL_TYPES missing or not matching CELLS")

    return Mesh(
        id=mesh_id,
        points=info.points,
        cells=info.cells,
        cell_types=info.cell_types if info.dataset == "UNSTRUCTURED_GRID" else None,
        point_fields=info.point_fields,
        dataset=info.dataset,
        format=MeshFormat.VTK,
    )


def _write_connectivity(f, name, cells):
    size = sum(len(cell) + 1 for cell in cells)
    f.write(f"{name} {len(cells)} {size}\n")
    for cell in cells:
        f.write(" ".join(str(i) for i in (len(cell),) + cell) + "\n")


def write(mesh, path):
    dataset = "UNSTRUCTURED_GRID" if "CELLS" in mesh.cells else mesh.dataset
    if dataset not in DATASET_TYPES:
        dataset = "POLYDATA"
    sections = GRID_SECTIONS if dataset == "UNSTRUCTURED_GRID" else POLYDATA_SECTIONS

    dropped = [name for name, conn in mesh.cells.items() if conn and name not in sections]
    if dropped:
        logger.warning("VTK %s output %s drops %s connectivity", dataset, path, "/".join(dropped))
    for name in mesh.point_fields:
        if not name or any(c.isspace() for c in name):
            raise ConfigurationError(f"VTK field names cannot contain whitespace: {name!r}")
    if dataset == "UNSTRUCTURED_GRID":
        cells = mesh.cells.get("CELLS", ())
        types = mesh.cell_types or ()
        if len(types) != len(cells):
            raise ConfigurationError(f"mesh {mesh.id!r} has {len(cells)} cells but {len(types)} cell types")

    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("# vtk DataFile Version 3.0\n")
        f.write(f"{VTK_TITLE}\n")
        f.write("ASCII\n")
        f.write(f"DATASET {dataset}\n")
        f.write(f"POINTS {mesh.point_count} double\n")
        for x, y, z in mesh.points:
            f.write(f"{format_float(x)} {format_float(y)} {format_float(z)}\n")

        if dataset == "UNSTRUCTURED_GRID":
            _write_connectivity(f, "CELLS", cells)
            f.write(f"CELL_TYPES {len(types)}\n")
            for t in types:
                f.write(f"{t}\n")
        else:
            for name in POLYDATA_SECTIONS:
                if mesh.cells.get(name):
                    _write_connectivity(f, name, mesh.cells[name])

        if mesh.point_fields:
            f.write(f"POINT_DATA {mesh.point_count}\n")
            for name, values in mesh.point_fields.items():
                f.write(f"SCALARS {name} double 1\n")
                f.write("LOOKUP_TABLE default\n")
                for v in values:
                    f.write(f"{format_float(v)}\n")
