# kernel.py
# Covariance functions between points and point sets, with the fixed-region modifier

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from ..errors import ConfigurationError, DomainError
from .geometry import FixedGeometry, as_points

SQRT3 = np.sqrt(3.0)
SQRT5 = np.sqrt(5.0)


class KernelFamily(str, Enum):
    GAUSSIAN = "gaussian"
    MATERN32 = "matern32"
    MATERN52 = "matern52"


@dataclass(frozen=True)
class KernelSpec:
    """Covariance specification: base family, influence radius theta, optional fixed region.

    theta has no default: it is the distance over which a node's displacement
    reaches and must be chosen for the geometry at hand.
    """

    family: KernelFamily
    theta: float
    fixed: Optional[FixedGeometry] = None

    def __post_init__(self):
        try:
            family = KernelFamily(self.family)
        except ValueError:
            raise ConfigurationError(
                f"unknown kernel family {self.family!r} "
                f"(expected one of {', '.join(f.value for f in KernelFamily)})"
            )
        object.__setattr__(self, "family", family)
        try:
            theta = float(self.theta)
        except (TypeError, ValueError):
            raise ConfigurationError(f"theta must be a number, got {self.theta!r}")
        if not np.isfinite(theta) or theta <= 0:
            raise ConfigurationError(f"theta must be positive, got {self.theta}")
        object.__setattr__(self, "theta", theta)

    @property
    def kappa0(self):
        return 1.0

    def to_json(self):
        return {"family": self.family.value, "theta": self.theta}


def _base_kappa(family, theta, d):
    r = d / theta
    if family is KernelFamily.GAUSSIAN:
        return np.exp(-0.5 * r * r)
    if family is KernelFamily.MATERN32:
        s = SQRT3 * r
        return (1.0 + s) * np.exp(-s)
    s = SQRT5 * r
    return (1.0 + s + s * s / 3.0) * np.exp(-s)


def kappa(spec, d):
    """Base covariance at distance d (scalar or array), ignoring the fixed modifier."""
    arr = np.asarray(d, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError(f"distance must be non-negative, got {d}")
    value = _base_kappa(spec.family, spec.theta, arr)
    if np.ndim(d) == 0:
        return float(value)
    return value


def modifier(spec, X):
    """f(x) = kappa(0) - kappa(d_F(x)); all ones without a fixed region."""
    X = as_points(X)
    if spec.fixed is None:
        return np.ones(len(X))
    return spec.kappa0 - _base_kappa(spec.family, spec.theta, spec.fixed.distance(X))


def prior_variance(spec, X, f=None):
    """K(x, x) per point: kappa(0) * f(x)^2."""
    if f is None:
        f = modifier(spec, X)
    return spec.kappa0 * (f * f)


def cross_covariance(spec, X, Y, fx=None, fy=None):
    """K(X, Y) with optional precomputed modifiers for X and Y."""
    X = as_points(X)
    Y = as_points(Y)
    K = _base_kappa(spec.family, spec.theta, cdist(X, Y))
    if spec.fixed is None:
        return K
    if fx is None:
        fx = modifier(spec, X)
    if fy is None:
        fy = modifier(spec, Y)
    # f(x)*f(y) first so that K(x, y) and K(y, x) round identically
    return K * (fx[:, None] * fy[None, :])


def cov(spec, x, y):
    """Covariance between two points."""
    return float(cross_covariance(spec, x, y)[0, 0])


def cov_matrix(spec, X, Y):
    """Covariance matrix [K(X_i, Y_j)]."""
    X = as_points(X)
    Y = as_points(Y)
    if len(X) == 0 or len(Y) == 0:
        raise DomainError("cov_matrix needs non-empty point lists")
    return cross_covariance(spec, X, Y)
