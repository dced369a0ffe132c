# helpers.py
# Utility functions for the krigmorph CLI: CSV tables and text output

import csv
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError, DimensionError, TableReadError
from ..sources.mesh import format_float


def _is_number(text):
    try:
        float(text)
        return True
    except ValueError:
        return False


def read_table(path, columns):
    """Read a numeric CSV with `columns` values per row; a non-numeric first row is a header."""
    rows = []
    try:
        with open(path, "r", encoding="utf-8", newline="") as f:
            for lineno, record in enumerate(csv.reader(f), start=1):
                cells = [c.strip() for c in record]
                if not any(cells) or cells[0].startswith("#"):
                    continue
                if not rows and lineno == 1 and not all(_is_number(c) for c in cells if c):
                    continue
                if len(cells) != columns:
                    raise TableReadError(f"{path}:{lineno}: expected {columns} columns, found {len(cells)}")
                try:
                    rows.append([float(c) for c in cells])
                except ValueError:
                    raise TableReadError(f"{path}:{lineno}: non-numeric value in {','.join(cells)!r}")
    except UnicodeDecodeError as e:
        raise TableReadError(f"{path}: not UTF-8 text (byte {e.start}: {e.reason})")
    except OSError as e:
        raise ConfigurationError(f"cannot read {path}: {e}")

    if not rows:
        raise TableReadError(f"{path}: no data rows")
    table = np.array(rows)
    if not np.all(np.isfinite(table)):
        raise TableReadError(f"{path}: values must be finite")
    return table


def read_displacements(path, node_count=None):
    """Node displacements "x,y,z" per row, in selection order."""
    d = read_table(path, 3)
    if node_count is not None and len(d) != node_count:
        raise DimensionError(
            f"{path} has {len(d)} displacement rows but the parametrization has {node_count} nodes"
        )
    return d


def read_targets(path):
    """Prescribed motions "x,y,z,dx,dy,dz" per row; returns (points, displacements)."""
    table = read_table(path, 6)
    return table[:, :3], table[:, 3:]


def write_displacements(path, d):
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(["x", "y", "z"])
            for row in d:
                writer.writerow([format_float(v) for v in row])
    except OSError as e:
        raise ConfigurationError(f"cannot write {path}: {e}")


def format_trace(trace, nodes):
    """Aligned text table of the selection trace."""
    lines = [f"{'step':>5} {'index':>8} {'x':>14} {'y':>14} {'z':>14} {'variance':>14}"]
    for step, ((index, variance), node) in enumerate(zip(trace, nodes), start=1):
        x, y, z = node
        lines.append(
            f"{step:>5} {index:>8} {x:>14.6e} {y:>14.6e} {z:>14.6e} {variance:>14.8f}"
        )
    return "\n".join(lines)


def check_inputs(files=(), outputs=()):
    """Fail fast: every input file exists and every output directory is there."""
    missing = [str(p) for p in files if p is not None and not Path(p).is_file()]
    if missing:
        raise ConfigurationError(f"input file not found: {', '.join(missing)}")
    for out in outputs:
        parent = Path(out).resolve().parent
        if not parent.is_dir():
            raise ConfigurationError(f"output directory does not exist: {parent}")
