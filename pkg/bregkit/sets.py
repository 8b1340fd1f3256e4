"""Set descriptors for certificates and gauge pair domains, with seeded sampling."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .core import INTERIOR, OUTSIDE, Zone, as_vector
from .errors import EmptyPair
from .norms import NormSpec, equivalence_constants

_PROJECTION_STEPS = 60
_SPIKE_FRACTION = 0.25
_AXIS_FRACTION = 1.0 / 3.0
_CROSS_TALK = 1e-3


class SetDescriptor(ABC):
    """A subset of R^dim that can be sampled and tested for membership."""

    dim: int

    @abstractmethod
    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """``count`` points of the set as a ``(count, dim)`` array."""

    @abstractmethod
    def contains(self, xs) -> np.ndarray:
        """Row-wise membership."""

    @abstractmethod
    def describe(self) -> str:
        ...

    @property
    def bounded(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class PointSet(SetDescriptor):
    """The singleton ``{x}``."""

    point: np.ndarray

    def __post_init__(self) -> None:
        point = np.array(self.point, dtype=float)
        point = as_vector(point, point.size, "point")
        point.setflags(write=False)
        object.__setattr__(self, "point", point)

    @property
    def dim(self) -> int:  # type: ignore[override]
        return int(self.point.shape[0])

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return np.tile(self.point, (count, 1))

    def contains(self, xs) -> np.ndarray:
        return np.all(np.atleast_2d(xs) == self.point, axis=-1)

    def describe(self) -> str:
        return "{" + ",".join(f"{v:g}" for v in self.point) + "}"


@dataclass(frozen=True, eq=False)
class BoxSet(SetDescriptor):
    """Closed box ``[lower, upper]`` sampled uniformly."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self) -> None:
        lower = np.array(self.lower, dtype=float)
        upper = np.array(self.upper, dtype=float)
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError(f"Box bounds must be vectors of equal length, got {lower.shape} and {upper.shape}")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise ValueError("Box bounds must be finite")
        if np.any(lower > upper):
            raise EmptyPair(f"Box is empty: lower {lower.tolist()} exceeds upper {upper.tolist()}")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def cube(cls, dim: int, low: float, high: float) -> "BoxSet":
        return cls(np.full(dim, float(low)), np.full(dim, float(high)))

    @property
    def dim(self) -> int:  # type: ignore[override]
        return int(self.lower.shape[0])

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        return rng.uniform(self.lower, self.upper, (count, self.dim))

    def contains(self, xs) -> np.ndarray:
        xs = np.atleast_2d(xs)
        return np.all((xs >= self.lower) & (xs <= self.upper), axis=-1)

    def describe(self) -> str:
        if np.all(self.lower == self.lower[0]) and np.all(self.upper == self.upper[0]):
            return f"[{self.lower[0]:g},{self.upper[0]:g}]^{self.dim}"
        return "box(" + ",".join(f"[{a:g},{b:g}]" for a, b in zip(self.lower, self.upper)) + ")"


def _floor_ok(zone: Zone, floor: float, xs: np.ndarray) -> np.ndarray:
    if floor <= 0:
        return np.ones(xs.shape[0], dtype=bool)
    finite = np.isfinite(zone.lower)
    return np.all(xs[:, finite] >= zone.lower[finite] + floor, axis=-1)


@dataclass(frozen=True, eq=False)
class BallSet(SetDescriptor):
    """``{w in dom(b) : |w| <= radius}``, optionally floored to ``w_k >= lower_k + floor``.

    Samples mix uniform draws from the enclosing box with coordinate spikes
    that push one coordinate towards the edge of the ball; draws outside the
    ball are pulled back along the ray from the zone anchor.

    Raises:
        EmptyPair: if the zone anchor is not strictly inside the ball.
    """

    zone: Zone
    radius: float
    norm: NormSpec
    floor: float = 0.0

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError(f"Ball radius must be positive, got {self.radius}")
        if self.floor < 0:
            raise ValueError(f"Coordinate floor must be nonnegative, got {self.floor}")
        if self.norm.dim != self.zone.dim:
            raise ValueError(f"Norm acts on R^{self.norm.dim}, zone lives in R^{self.zone.dim}")
        anchor_norm = float(self.norm.evaluate(self.anchor))
        if not anchor_norm < self.radius:
            raise EmptyPair(
                f"Ball of radius {self.radius:g} misses the domain: the anchor "
                f"{self.anchor.tolist()} already has norm {anchor_norm:g}"
            )

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.zone.dim

    @property
    def anchor(self) -> np.ndarray:
        return self.zone.anchor(self.floor)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.radius)

    def _extent(self):
        reach = equivalence_constants(self.norm).c_inf * self.radius
        finite = np.isfinite(self.zone.lower)
        lo = np.where(finite, self.zone.lower + self.floor, -reach)
        hi = np.full(self.dim, reach)
        if np.any(lo >= hi):
            raise EmptyPair(f"Coordinate floor leaves no room inside radius {self.radius:g}")
        return lo, hi

    def _pull_back(self, pts: np.ndarray) -> np.ndarray:
        a = self.anchor
        outside = self.norm.evaluate(pts) > self.radius
        if not np.any(outside):
            return pts
        far = pts[outside]
        lo = np.zeros(far.shape[0])
        hi = np.ones(far.shape[0])
        for _ in range(_PROJECTION_STEPS):
            mid = 0.5 * (lo + hi)
            inside = self.norm.evaluate(a + mid[:, None] * (far - a)) <= self.radius
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        pts = pts.copy()
        pts[outside] = a + lo[:, None] * (far - a)
        return pts

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        if not self.bounded:
            raise ValueError("Cannot sample a ball of infinite radius")
        lo, hi = self._extent()
        n_spike = int(count * _SPIKE_FRACTION)
        box = rng.uniform(lo, hi, (count - n_spike, self.dim))
        span = hi - lo
        spikes = lo + _CROSS_TALK * span * (1.0 - rng.random((n_spike, self.dim)))
        axis = rng.integers(0, self.dim, n_spike)
        rows = np.arange(n_spike)
        spikes[rows, axis] = rng.uniform(lo[axis], hi[axis])
        return self._pull_back(np.vstack([box, spikes]))

    def contains(self, xs) -> np.ndarray:
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        in_zone = self.zone.status_codes(xs) != OUTSIDE
        in_ball = self.norm.evaluate(xs) <= self.radius * (1.0 + 1e-12)
        return in_zone & in_ball & _floor_ok(self.zone, self.floor, xs)

    def describe(self) -> str:
        text = f"{self.zone.describe()} & |w|<={self.radius:g}"
        return text + (f" & w>=lower+{self.floor:g}" if self.floor else "")


@dataclass(frozen=True, eq=False)
class ShellSet(SetDescriptor):
    """``{w in zone : |w - center| > radius}``, optionally floored.

    Sampled radii are half near the inner sphere (up to 1.5 times the
    radius) and half log-uniform up to ``reach`` times it. Directions come
    from the positive cone of the zone or from perturbed coordinate axes.
    """

    zone: Zone
    norm: NormSpec
    radius: float
    center: Optional[np.ndarray] = None
    floor: float = 0.0
    reach: float = 1e3
    _center: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise ValueError(f"Shell radius must be finite and nonnegative, got {self.radius}")
        center = np.zeros(self.zone.dim) if self.center is None else np.array(self.center, dtype=float)
        center = as_vector(center, self.zone.dim, "center")
        center.setflags(write=False)
        object.__setattr__(self, "_center", center)

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.zone.dim

    @property
    def bounded(self) -> bool:
        return False

    @property
    def middle(self) -> np.ndarray:
        return self._center

    def _radii(self, rng: np.random.Generator, count: int) -> np.ndarray:
        scale = self.radius if self.radius > 0 else 1.0
        half = count // 2
        near = scale * (1.0 + 0.5 * (1.0 - rng.random(half)))
        if self.radius == 0:
            near = scale * 1.5 * (1.0 - rng.random(half))
        far = scale * np.exp(rng.random(count - half) * math.log(self.reach))
        return np.concatenate([near, far])

    def _directions(self, rng: np.random.Generator, count: int) -> np.ndarray:
        finite = np.isfinite(self.zone.lower)
        n_axis = int(count * _AXIS_FRACTION)
        cone = np.where(finite, 1.0 - rng.random((count - n_axis, self.dim)), rng.standard_normal((count - n_axis, self.dim)))
        axes = np.where(finite, _CROSS_TALK * (1.0 - rng.random((n_axis, self.dim))), 0.0)
        k = rng.integers(0, self.dim, n_axis)
        sign = np.where(finite[k], 1.0, rng.choice([-1.0, 1.0], n_axis))
        axes[np.arange(n_axis), k] = sign
        dirs = np.vstack([cone, axes])
        return dirs / self.norm.evaluate(dirs)[:, None]

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        anchor = self.zone.anchor(self.floor)
        base = float(self.norm.evaluate(anchor - self._center))
        chunks, total = [], 0
        while total < count:
            pts = anchor + (base + self._radii(rng, count))[:, None] * self._directions(rng, count)
            keep = pts[self.contains(pts)]
            chunks.append(keep)
            total += keep.shape[0]
        return np.vstack(chunks)[:count]

    def contains(self, xs) -> np.ndarray:
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        in_zone = self.zone.status_codes(xs) == INTERIOR
        outside_ball = self.norm.evaluate(xs - self._center) > self.radius
        return in_zone & outside_ball & _floor_ok(self.zone, self.floor, xs)

    def describe(self) -> str:
        ref = "w" if not np.any(self._center) else "w-c"
        text = f"{self.zone.describe()} & |{ref}|>{self.radius:.6g}"
        return text + (f" & w>=lower+{self.floor:g}" if self.floor else "")
