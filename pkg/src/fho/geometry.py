"""Box search spaces, visibility ramp and boundary repair."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, RunError

RADII_MODES = ("practical", "paper-literal")


@dataclass(frozen=True, eq=False)
class SearchSpace:
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float)).copy()
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float)).copy()
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size < 1:
            raise ParameterError("lower and upper must be 1-D vectors of equal length >= 1")
        if not np.all(lower < upper):
            raise ParameterError("every lower bound must be strictly below its upper bound")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, low: float, high: float, n: int) -> "SearchSpace":
        return cls(np.full(n, float(low)), np.full(n, float(high)))

    @property
    def n(self) -> int:
        return self.lower.size

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def __eq__(self, other):
        if not isinstance(other, SearchSpace):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(self.upper, other.upper)

    def __hash__(self):
        return hash((self.lower.tobytes(), self.upper.tobytes()))


@dataclass(frozen=True)
class VisibilityRadii:
    """Two-threshold ramp: visibility 1 up to ``r_full``, 0 from ``r_zero`` on."""

    r_full: float
    r_zero: float

    def __post_init__(self):
        if not (0.0 <= self.r_full < self.r_zero):
            raise ParameterError(
                f"visibility radii need 0 <= r_full < r_zero, got r_full={self.r_full}, r_zero={self.r_zero}"
            )

    @classmethod
    def from_paper(cls, r_u: float, r_v: float) -> "VisibilityRadii":
        # The printed ramp is continuous under either ordering of the two radii.
        return cls(min(r_u, r_v), max(r_u, r_v))


def diameter(space: SearchSpace) -> float:
    return float(np.linalg.norm(space.width))


def visibility(distance: float, radii: VisibilityRadii) -> float:
    if distance <= radii.r_full:
        return 1.0
    if distance >= radii.r_zero:
        return 0.0
    return (radii.r_zero - distance) / (radii.r_zero - radii.r_full)


def clamp_to_box(x, space: SearchSpace) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if np.isnan(x).any():
        raise RunError(f"cannot clamp a position containing NaN: {x}")
    return np.minimum(space.upper, np.maximum(space.lower, x))


def default_radii(space: SearchSpace, mode: str = "practical") -> VisibilityRadii:
    """Visibility radii derived from the box diameter.

    ``paper-literal`` uses ``10**-n * d`` and ``0.8`` of it, which for large
    ``n`` leaves hunters blind almost everywhere. ``practical`` ramps from full
    visibility at distance 0 down to none at ``d``, so the Lévy share of a move
    shrinks in proportion to the distance from the food.
    """
    d = diameter(space)
    if mode == "practical":
        return VisibilityRadii(0.0, d)
    if mode == "paper-literal":
        r_u = math.pow(10.0, -space.n) * d
        return VisibilityRadii.from_paper(r_u, 0.8 * r_u)
    raise ParameterError(f"radii mode must be one of {RADII_MODES}, got {mode!r}")
