# geometry.py
# Fixed regions of space built from analytic primitives, and their distance functions

import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..errors import ConfigurationError, DomainError, ParseError


def as_points(X):
    """Coerce a single point or a point list to an (n, 3) float64 array."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != 3:
        raise DomainError(f"expected points with 3 coordinates, got shape {X.shape}")
    return X


def _vector3(value, name):
    try:
        vec = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{name} must be three numbers, got {value!r}")
    if vec.shape != (3,) or not np.all(np.isfinite(vec)):
        raise ConfigurationError(f"{name} must be three finite numbers, got {value!r}")
    return vec


@dataclass(frozen=True)
class Sphere:
    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(_vector3(self.center, "sphere center")))
        if not np.isfinite(self.radius) or self.radius <= 0:
            raise ConfigurationError(f"sphere radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", float(self.radius))

    def distance(self, X):
        X = as_points(X)
        dist = np.linalg.norm(X - np.asarray(self.center), axis=1) - self.radius
        return np.maximum(dist, 0.0)

    def to_json(self):
        return {"type": "sphere", "center": list(self.center), "radius": self.radius}


@dataclass(frozen=True)
class Box:
    """Axis-aligned box [min, max]."""

    min: tuple
    max: tuple

    def __post_init__(self):
        lo = _vector3(self.min, "box min")
        hi = _vector3(self.max, "box max")
        if np.any(lo > hi):
            raise ConfigurationError(f"box min {lo.tolist()} exceeds max {hi.tolist()}")
        object.__setattr__(self, "min", tuple(lo))
        object.__setattr__(self, "max", tuple(hi))

    def distance(self, X):
        X = as_points(X)
        lo = np.asarray(self.min)
        hi = np.asarray(self.max)
        # Per-axis gap to the slab, zero inside it
        gap = np.maximum(np.maximum(lo - X, X - hi), 0.0)
        return np.linalg.norm(gap, axis=1)

    def to_json(self):
        return {"type": "box", "min": list(self.min), "max": list(self.max)}


@dataclass(frozen=True)
class HalfSpace:
    """The closed half-space behind `point`; `normal` points out of the fixed side."""

    point: tuple
    normal: tuple

    def __post_init__(self):
        point = _vector3(self.point, "halfspace point")
        normal = _vector3(self.normal, "halfspace normal")
        length = np.linalg.norm(normal)
        if length == 0:
            raise ConfigurationError("halfspace normal must be non-zero")
        object.__setattr__(self, "point", tuple(point))
        object.__setattr__(self, "normal", tuple(normal / length))

    def distance(self, X):
        X = as_points(X)
        return np.maximum((X - np.asarray(self.point)) @ np.asarray(self.normal), 0.0)

    def to_json(self):
        return {"type": "halfspace", "point": list(self.point), "normal": list(self.normal)}


Primitive = Union[Sphere, Box, HalfSpace]

PRIMITIVE_FIELDS = {
    "sphere": (Sphere, ("center", "radius")),
    "box": (Box, ("min", "max")),
    "halfspace": (HalfSpace, ("point", "normal")),
}


@dataclass(frozen=True)
class FixedGeometry:
    """Union of primitives that must not move."""

    primitives: tuple

    def __post_init__(self):
        primitives = tuple(self.primitives)
        if not primitives:
            raise ConfigurationError(
                "fixed geometry needs at least one primitive (omit it entirely for no fixing)"
            )
        object.__setattr__(self, "primitives", primitives)

    def distance(self, X):
        """Euclidean distance of each point to the fixed set, 0 inside it."""
        X = as_points(X)
        dist = self.primitives[0].distance(X)
        for primitive in self.primitives[1:]:
            dist = np.minimum(dist, primitive.distance(X))
        return dist

    def contains(self, X):
        return self.distance(X) == 0.0

    def to_json(self):
        return [p.to_json() for p in self.primitives]

    @classmethod
    def from_json(cls, data):
        """Build from the list-of-objects JSON form."""
        if not isinstance(data, list):
            raise ConfigurationError("fixed geometry must be a JSON list of primitives")

        primitives = []
        for i, item in enumerate(data):
            if not isinstance(item, dict):
                raise ConfigurationError(f"fixed primitive #{i} is not an object")
            kind = item.get("type")
            if kind not in PRIMITIVE_FIELDS:
                raise ConfigurationError(
                    f"fixed primitive #{i}: unknown type {kind!r} "
                    f"(expected one of {', '.join(PRIMITIVE_FIELDS)})"
                )
            factory, fields = PRIMITIVE_FIELDS[kind]
            missing = [f for f in fields if f not in item]
            if missing:
                raise ConfigurationError(f"fixed primitive #{i} ({kind}): missing {', '.join(missing)}")
            try:
                primitives.append(factory(**{f: item[f] for f in fields}))
            except TypeError as e:
                raise ConfigurationError(f"fixed primitive #{i} ({kind}): {e}")
        return cls(tuple(primitives))


def load_fixed_geometry(path):
    """Read a fixed-geometry JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}:{e.lineno}: invalid JSON in fixed geometry: {e.msg}")
    except UnicodeDecodeError as e:
        raise ParseError(f"{path}: fixed geometry is not UTF-8 text (byte {e.start}: {e.reason})")
    except OSError as e:
        raise ConfigurationError(f"cannot read fixed geometry {path}: {e}")
    return FixedGeometry.from_json(data)


def distance_to_fixed(geom, x):
    """Distance from a single point to the fixed set."""
    return float(geom.distance(x)[0])
