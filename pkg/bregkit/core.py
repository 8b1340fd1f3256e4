"""Bregman-function interface: domains, the generic divergence engine and metadata."""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional

import numpy as np

from .errors import DimensionMismatch, NotInDomain, NotInInterior
from .norms import NormSpec

# Values of b and B live in (-inf, inf]; +inf is math.inf, never NaN.
ExtendedReal = float
POS_INF: ExtendedReal = math.inf

INTERIOR = 0
BOUNDARY = 1
OUTSIDE = 2


class DomainStatus(str, Enum):
    """Where a point sits relative to dom(b) and its interior, the zone."""

    INTERIOR = "interior"
    BOUNDARY_IN_DOMAIN = "boundary_in_domain"
    OUTSIDE_DOMAIN = "outside_domain"

    @classmethod
    def from_code(cls, code: int) -> "DomainStatus":
        return (cls.INTERIOR, cls.BOUNDARY_IN_DOMAIN, cls.OUTSIDE_DOMAIN)[int(code)]


def as_vector(x, dim: int, name: str = "x") -> np.ndarray:
    """Validate a point of R^dim and return it as a float array."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise DimensionMismatch(
            f"{name} must be a vector of length {dim}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries: {arr.tolist()}")
    return arr


def as_batch(xs, dim: int, name: str = "x") -> np.ndarray:
    arr = np.atleast_2d(np.asarray(xs, dtype=float))
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DimensionMismatch(
            f"{name} must have shape (N, {dim}), got {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


# ---------------------------------------------------------------------- #
# Zones
# ---------------------------------------------------------------------- #
@dataclass(frozen=True, eq=False)
class Zone:
    """Product of half-lines ``x_k > lower_k`` (``>=`` where ``closed_k``).

    Every entropy of the catalog has an effective domain of this shape; a
    lower bound of ``-inf`` leaves the coordinate unconstrained.
    """

    lower: np.ndarray
    closed: np.ndarray

    @classmethod
    def whole(cls, dim: int) -> "Zone":
        return cls(np.full(dim, -np.inf), np.ones(dim, dtype=bool))

    @classmethod
    def orthant(cls, dim: int, lower: float = 0.0, closed: bool = True) -> "Zone":
        return cls(np.full(dim, float(lower)), np.full(dim, bool(closed)))

    @classmethod
    def concat(cls, zones: Iterable["Zone"]) -> "Zone":
        zones = list(zones)
        return cls(
            np.concatenate([z.lower for z in zones]),
            np.concatenate([z.closed for z in zones]),
        )

    @property
    def dim(self) -> int:
        return int(self.lower.shape[0])

    @property
    def is_whole(self) -> bool:
        return bool(np.all(np.isneginf(self.lower)))

    @property
    def is_closed(self) -> bool:
        finite = np.isfinite(self.lower)
        return bool(np.all(self.closed[finite]))

    def status_codes(self, xs: np.ndarray) -> np.ndarray:
        """INTERIOR / BOUNDARY / OUTSIDE code per row (last axis = coordinates)."""
        below = xs < self.lower
        on_edge = xs == self.lower
        outside = np.any(below | (on_edge & ~self.closed), axis=-1)
        boundary = np.any(on_edge & self.closed, axis=-1)
        return np.where(outside, OUTSIDE, np.where(boundary, BOUNDARY, INTERIOR))

    def classify(self, x: np.ndarray) -> DomainStatus:
        return DomainStatus.from_code(self.status_codes(x))

    def shifted(self, z0: np.ndarray) -> "Zone":
        return Zone(self.lower - z0, self.closed.copy())

    def intersect(self, other: "Zone") -> "Zone":
        lower = np.maximum(self.lower, other.lower)
        closed = np.where(
            self.lower > other.lower,
            self.closed,
            np.where(other.lower > self.lower, other.closed, self.closed & other.closed),
        )
        return Zone(lower, closed)

    def anchor(self, floor: float = 0.0) -> np.ndarray:
        """Reference point of the zone: ``lower + floor`` per bounded coordinate, 0 elsewhere."""
        finite = np.isfinite(self.lower)
        out = np.zeros(self.dim)
        out[finite] = self.lower[finite] + floor
        return out

    def describe(self) -> str:
        parts = []
        for lo, closed in zip(self.lower, self.closed):
            if np.isneginf(lo):
                parts.append("R")
            else:
                parts.append(f"{'[' if closed else '('}{lo:g},inf)")
        if len(set(parts)) == 1:
            return f"{parts[0]}^{self.dim}"
        return " x ".join(parts)


@dataclass(frozen=True)
class EntropyMetadata:
    """Classification flags of a Bregman function.

    The verdict flags are ``None`` where no result settles the question.
    """

    essentially_smooth: bool
    legendre: bool
    dom_closed: bool
    zone: Zone
    bregman_function: Optional[bool] = None
    sequentially_consistent: Optional[bool] = None
    limiting_difference: Optional[bool] = None
    bounded_level_sets: Optional[bool] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "essentially_smooth": self.essentially_smooth,
            "legendre": self.legendre,
            "dom_closed": self.dom_closed,
            "zone": self.zone.describe(),
            "bregman_function": self.bregman_function,
            "sequentially_consistent": self.sequentially_consistent,
            "limiting_difference": self.limiting_difference,
            "bounded_level_sets": self.bounded_level_sets,
        }


# ---------------------------------------------------------------------- #
# Entropy interface
# ---------------------------------------------------------------------- #
class EntropySpec(ABC):
    """Abstract Bregman function ``b`` on R^n with its divergence.

    Subclasses implement the formulas on rows of a 2-D array (last axis holds
    coordinates) and only ever see points that already passed the domain
    rules. The public methods validate inputs, apply the rules and
    short-circuit to ``inf`` before any subtraction could involve it.

    Example:
        >>> from bregkit.catalog import BGS
        >>> BGS(dim=1).divergence_generic([2.0], [1.0])
        0.3862943611198906
    """

    dim: int
    norm: NormSpec

    # ------------------------------------------------------------------ #
    # Formulas supplied by concrete entropies
    # ------------------------------------------------------------------ #
    @property
    @abstractmethod
    def name(self) -> str:
        """Short label used in probe names and reports."""

    @abstractmethod
    def zone(self) -> Zone:
        """Effective domain as a product of half-lines."""

    @property
    @abstractmethod
    def essentially_smooth(self) -> bool:
        ...

    @property
    @abstractmethod
    def legendre(self) -> bool:
        ...

    # Verdicts on the Bregman-function axioms; ``None`` means undecided.
    @property
    def bregman_function(self) -> Optional[bool]:
        return None

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        return None

    @property
    def limiting_difference(self) -> Optional[bool]:
        return None

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        """Whether every level set ``{y : B(x, y) <= gamma}`` is bounded."""
        return None

    @abstractmethod
    def _value(self, xs: np.ndarray) -> np.ndarray:
        """b on points of dom(b)."""

    @abstractmethod
    def _grad(self, xs: np.ndarray) -> np.ndarray:
        """b' on points of the zone."""

    @abstractmethod
    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        """b''(x)(w, w) on points of the zone."""

    @abstractmethod
    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Closed-form B for x in dom(b), y in the zone."""

    @property
    def probe_radius(self) -> float:
        """Coordinate extent used when probes draw generic interior points."""
        return 5.0

    def metadata(self) -> EntropyMetadata:
        zone = self.zone()
        return EntropyMetadata(
            essentially_smooth=self.essentially_smooth,
            legendre=self.legendre,
            dom_closed=zone.is_closed,
            zone=zone,
            bregman_function=self.bregman_function,
            sequentially_consistent=self.sequentially_consistent,
            limiting_difference=self.limiting_difference,
            bounded_level_sets=self.bounded_level_sets,
        )

    # ------------------------------------------------------------------ #
    # Validated single-point API
    # ------------------------------------------------------------------ #
    def vector(self, x, name: str = "x") -> np.ndarray:
        return as_vector(x, self.dim, name)

    def classify(self, x) -> DomainStatus:
        return self.zone().classify(self.vector(x))

    def value(self, x) -> ExtendedReal:
        return float(self.values(self.vector(x)[None, :])[0])

    def grad(self, x) -> np.ndarray:
        x = self.vector(x)
        self._require_interior(x, "x")
        return np.asarray(self._grad(x[None, :])[0], dtype=float)

    def hessian_quadform(self, x, w) -> float:
        x = self.vector(x)
        w = self.vector(w, "w")
        self._require_interior(x, "x")
        return float(self._hessian_quadform(x[None, :], w[None, :])[0])

    def divergence_generic(self, x, y) -> ExtendedReal:
        """``b(x) - b(y) - <b'(y), x - y>``, built only from value and grad."""
        return float(
            self.divergences(self.vector(x)[None, :], self.vector(y, "y")[None, :], closed=False)[0]
        )

    def divergence_closed(self, x, y) -> ExtendedReal:
        """Closed-form divergence under the same domain rules as the generic one."""
        return float(
            self.divergences(self.vector(x)[None, :], self.vector(y, "y")[None, :], closed=True)[0]
        )

    def three_point_residual(self, x, y, z) -> float:
        """``B(x,z) - B(x,y) - B(y,z) - <b'(y) - b'(z), x - y>``; zero up to rounding."""
        x = self.vector(x)
        y = self.vector(y, "y")
        z = self.vector(z, "z")
        if self.zone().status_codes(x) == OUTSIDE:
            raise NotInDomain(f"x={x.tolist()} is outside dom(b) of {self.name}")
        self._require_interior(y, "y")
        self._require_interior(z, "z")
        b_xz = self.divergence_closed(x, z)
        b_xy = self.divergence_closed(x, y)
        b_yz = self.divergence_closed(y, z)
        cross = float(np.dot(self.grad(y) - self.grad(z), x - y))
        return b_xz - b_xy - b_yz - cross

    # ------------------------------------------------------------------ #
    # Batch API used by the probes
    # ------------------------------------------------------------------ #
    def status_codes(self, xs) -> np.ndarray:
        return self.zone().status_codes(as_batch(xs, self.dim))

    def values(self, xs) -> np.ndarray:
        xs = as_batch(xs, self.dim)
        codes = self.zone().status_codes(xs)
        out = np.full(xs.shape[0], POS_INF)
        inside = codes != OUTSIDE
        if np.any(inside):
            out[inside] = self._value(xs[inside])
        return out

    def grads(self, xs) -> np.ndarray:
        xs = as_batch(xs, self.dim)
        if np.any(self.zone().status_codes(xs) != INTERIOR):
            raise NotInInterior(f"Gradient requested outside the zone of {self.name}")
        return self._grad(xs)

    def hessian_quadforms(self, xs, ws) -> np.ndarray:
        xs = as_batch(xs, self.dim)
        ws = as_batch(ws, self.dim, "w")
        if np.any(self.zone().status_codes(xs) != INTERIOR):
            raise NotInInterior(f"Hessian requested outside the zone of {self.name}")
        return self._hessian_quadform(*np.broadcast_arrays(xs, ws))

    def divergences(self, xs, ys, closed: bool = True) -> np.ndarray:
        """Row-wise B(x, y); ``closed=False`` selects the generic engine."""
        xs, ys = np.broadcast_arrays(as_batch(xs, self.dim), as_batch(ys, self.dim, "y"))
        zone = self.zone()
        valid = (zone.status_codes(xs) != OUTSIDE) & (zone.status_codes(ys) == INTERIOR)
        out = np.full(xs.shape[0], POS_INF)
        same = valid & np.all(xs == ys, axis=-1)
        out[same] = 0.0
        todo = valid & ~same
        if np.any(todo):
            x_t, y_t = xs[todo], ys[todo]
            if closed:
                out[todo] = self._divergence(x_t, y_t)
            else:
                out[todo] = (
                    self._value(x_t)
                    - self._value(y_t)
                    - np.sum(self._grad(y_t) * (x_t - y_t), axis=-1)
                )
        return out

    def _require_interior(self, x: np.ndarray, name: str) -> None:
        status = self.zone().classify(x)
        if status is not DomainStatus.INTERIOR:
            raise NotInInterior(
                f"{name}={x.tolist()} is {status.value} for {self.name}; "
                "the zone is " + self.zone().describe()
            )

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} on R^{self.dim}, {self.norm.label}>"


def default_norm(norm: Optional[NormSpec], dim: int) -> NormSpec:
    if norm is None:
        return NormSpec.euclidean(dim)
    if norm.dim != dim:
        raise DimensionMismatch(f"Norm acts on R^{norm.dim}, entropy on R^{dim}")
    return norm
