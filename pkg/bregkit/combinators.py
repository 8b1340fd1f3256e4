"""Constructions that build new Bregman functions from existing ones."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .core import EntropySpec, Zone, as_vector
from .errors import DimensionMismatch, NonpositiveLambda, SemiEquivalenceViolated
from .norms import NormSpec, verification_vectors

logger = logging.getLogger(__name__)

_SEMI_EQUIVALENCE_SAMPLES = 10_000
_SEMI_EQUIVALENCE_SEED = 5_300_017
_SEMI_EQUIVALENCE_SLACK = 1e-12


def _all_true(flags: Iterable[Optional[bool]]) -> Optional[bool]:
    """``True`` when every flag is ``True``, otherwise undecided."""
    return True if all(flag is True for flag in flags) else None


class _Wrapper(EntropySpec):
    """Delegates dimension, norm and flags to a single inner entropy."""

    inner: EntropySpec

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.inner.dim

    @property
    def norm(self) -> NormSpec:  # type: ignore[override]
        return self.inner.norm

    @property
    def essentially_smooth(self) -> bool:
        return self.inner.essentially_smooth

    @property
    def legendre(self) -> bool:
        return self.inner.legendre

    @property
    def bregman_function(self) -> Optional[bool]:
        return self.inner.bregman_function

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        return self.inner.sequentially_consistent

    @property
    def limiting_difference(self) -> Optional[bool]:
        return self.inner.limiting_difference

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        return self.inner.bounded_level_sets

    @property
    def probe_radius(self) -> float:
        return self.inner.probe_radius


@dataclass(frozen=True, eq=False)
class Scaled(_Wrapper):
    """``lam * b``; every divergence scales by ``lam``."""

    inner: EntropySpec
    lam: float

    @property
    def name(self) -> str:
        return f"{self.lam:g}*{self.inner.name}"

    def zone(self) -> Zone:
        return self.inner.zone()

    def _value(self, xs):
        return self.lam * self.inner._value(xs)

    def _grad(self, xs):
        return self.lam * self.inner._grad(xs)

    def _hessian_quadform(self, xs, ws):
        return self.lam * self.inner._hessian_quadform(xs, ws)

    def _divergence(self, xs, ys):
        return self.lam * self.inner._divergence(xs, ys)


@dataclass(frozen=True, eq=False)
class PlusLinear(_Wrapper):
    """``b + <ell, .>``; the divergence is unchanged."""

    inner: EntropySpec
    ell: np.ndarray

    @property
    def name(self) -> str:
        return f"{self.inner.name}+lin"

    def zone(self) -> Zone:
        return self.inner.zone()

    def _value(self, xs):
        return self.inner._value(xs) + xs @ self.ell

    def _grad(self, xs):
        return self.inner._grad(xs) + self.ell

    def _hessian_quadform(self, xs, ws):
        return self.inner._hessian_quadform(xs, ws)

    def _divergence(self, xs, ys):
        return self.inner._divergence(xs, ys)


@dataclass(frozen=True, eq=False)
class Translated(_Wrapper):
    """``x -> b(x + z0)``; the zone moves by ``-z0``."""

    inner: EntropySpec
    z0: np.ndarray

    @property
    def name(self) -> str:
        return f"{self.inner.name}@shift"

    def zone(self) -> Zone:
        return self.inner.zone().shifted(self.z0)

    def _value(self, xs):
        return self.inner._value(xs + self.z0)

    def _grad(self, xs):
        return self.inner._grad(xs + self.z0)

    def _hessian_quadform(self, xs, ws):
        return self.inner._hessian_quadform(xs + self.z0, ws)

    def _divergence(self, xs, ys):
        return self.inner.divergences(xs + self.z0, ys + self.z0, closed=True)


@dataclass(frozen=True, eq=False)
class SumOf(EntropySpec):
    """Positive combination ``sum w_k b_k`` of entropies on the same space.

    The domain is the intersection of the member domains and
    ``B = sum w_k B_k``.
    """

    members: Tuple[Tuple[float, EntropySpec], ...]

    @property
    def dim(self) -> int:  # type: ignore[override]
        return self.members[0][1].dim

    @property
    def norm(self) -> NormSpec:  # type: ignore[override]
        return self.members[0][1].norm

    @property
    def name(self) -> str:
        return "+".join(f"{w:g}*{spec.name}" for w, spec in self.members)

    def zone(self) -> Zone:
        zone = self.members[0][1].zone()
        for _, spec in self.members[1:]:
            zone = zone.intersect(spec.zone())
        return zone

    @property
    def essentially_smooth(self) -> bool:
        return all(spec.essentially_smooth for _, spec in self.members)

    @property
    def legendre(self) -> bool:
        return all(spec.legendre for _, spec in self.members)

    @property
    def bregman_function(self) -> Optional[bool]:
        return _all_true(spec.bregman_function for _, spec in self.members)

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        if not self.bregman_function:
            return None
        return True if any(spec.sequentially_consistent for _, spec in self.members) else None

    @property
    def limiting_difference(self) -> Optional[bool]:
        return _all_true(spec.limiting_difference for _, spec in self.members)

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        return True if self.bregman_function else None

    @property
    def probe_radius(self) -> float:
        return min(spec.probe_radius for _, spec in self.members)

    def _value(self, xs):
        return sum(w * spec._value(xs) for w, spec in self.members)

    def _grad(self, xs):
        return sum(w * spec._grad(xs) for w, spec in self.members)

    def _hessian_quadform(self, xs, ws):
        return sum(w * spec._hessian_quadform(xs, ws) for w, spec in self.members)

    def _divergence(self, xs, ys):
        return sum(w * spec._divergence(xs, ys) for w, spec in self.members)


@dataclass(frozen=True, eq=False)
class DirectSumOf(EntropySpec):
    """Block-separable entropy ``b(x) = sum b_i(x_i)`` on the product space.

    ``c`` is a constant with ``sqrt(sum ||x_i||_i^2) >= c ||x||`` for the total
    norm; it converts block strong-convexity parameters into one for the sum.
    """

    members: Tuple[EntropySpec, ...]
    c: float
    total_norm: NormSpec

    @property
    def dim(self) -> int:  # type: ignore[override]
        return sum(spec.dim for spec in self.members)

    @property
    def norm(self) -> NormSpec:  # type: ignore[override]
        return self.total_norm

    @property
    def name(self) -> str:
        return "(" + "+".join(spec.name for spec in self.members) + ")"

    @property
    def offsets(self) -> List[Tuple[int, int]]:
        bounds, start = [], 0
        for spec in self.members:
            bounds.append((start, start + spec.dim))
            start += spec.dim
        return bounds

    def blocks(self, xs: np.ndarray) -> List[np.ndarray]:
        return [xs[..., a:b] for a, b in self.offsets]

    def block_norm(self, xs: np.ndarray) -> np.ndarray:
        """``sqrt(sum ||x_i||_i^2)``, the norm the block parameters refer to."""
        squares = [spec.norm.evaluate(part) ** 2 for spec, part in zip(self.members, self.blocks(xs))]
        return np.sqrt(sum(squares))

    def zone(self) -> Zone:
        return Zone.concat(spec.zone() for spec in self.members)

    @property
    def essentially_smooth(self) -> bool:
        return all(spec.essentially_smooth for spec in self.members)

    @property
    def legendre(self) -> bool:
        return all(spec.legendre for spec in self.members)

    @property
    def bregman_function(self) -> Optional[bool]:
        return _all_true(spec.bregman_function for spec in self.members)

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        return _all_true(spec.sequentially_consistent for spec in self.members)

    @property
    def limiting_difference(self) -> Optional[bool]:
        return _all_true(spec.limiting_difference for spec in self.members)

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        return _all_true(spec.bounded_level_sets for spec in self.members)

    @property
    def probe_radius(self) -> float:
        return min(spec.probe_radius for spec in self.members)

    def _value(self, xs):
        return sum(spec._value(part) for spec, part in zip(self.members, self.blocks(xs)))

    def _grad(self, xs):
        return np.concatenate(
            [spec._grad(part) for spec, part in zip(self.members, self.blocks(xs))], axis=-1
        )

    def _hessian_quadform(self, xs, ws):
        return sum(
            spec._hessian_quadform(px, pw)
            for spec, px, pw in zip(self.members, self.blocks(xs), self.blocks(ws))
        )

    def _divergence(self, xs, ys):
        return sum(
            spec._divergence(px, py)
            for spec, px, py in zip(self.members, self.blocks(xs), self.blocks(ys))
        )


# ---------------------------------------------------------------------- #
# Constructors
# ---------------------------------------------------------------------- #
def scale_plus_linear(spec: EntropySpec, lam: float, ell=None) -> EntropySpec:
    """``lam * b + <ell, .>`` with divergence ``lam * B``.

    Raises:
        NonpositiveLambda: if ``lam <= 0``.
    """
    if not lam > 0:
        raise NonpositiveLambda(f"Scaling factor must be positive, got {lam}")
    scaled: EntropySpec = spec if lam == 1 else Scaled(spec, float(lam))
    if ell is None:
        return scaled
    ell = as_vector(ell, spec.dim, "ell")
    ell.setflags(write=False)
    return PlusLinear(scaled, ell)


def translate(spec: EntropySpec, z0) -> EntropySpec:
    """Entropy ``x -> b(x + z0)`` with ``B~(x, y) = B(x + z0, y + z0)``."""
    z0 = as_vector(z0, spec.dim, "z0")
    z0.setflags(write=False)
    return Translated(spec, z0)


def weighted_sum(members: Iterable[Tuple[float, EntropySpec]]) -> EntropySpec:
    """``sum w_k b_k``; all members must share dimension and norm."""
    members = tuple((float(w), spec) for w, spec in members)
    if not members:
        raise ValueError("weighted_sum needs at least one member")
    first = members[0][1]
    for weight, spec in members:
        if not weight > 0:
            raise NonpositiveLambda(f"Sum weights must be positive, got {weight}")
        if spec.dim != first.dim:
            raise DimensionMismatch(f"{spec.name} lives on R^{spec.dim}, expected R^{first.dim}")
        if spec.norm != first.norm:
            raise ValueError(f"{spec.name} uses {spec.norm.label}, expected {first.norm.label}")
    return SumOf(members)


def direct_sum(
    specs: Sequence[EntropySpec], c: float, norm: Optional[NormSpec] = None
) -> DirectSumOf:
    """Block entropy on the product space, with ``c`` checked on sampled vectors.

    Raises:
        SemiEquivalenceViolated: if some sampled ``v`` has
            ``sqrt(sum ||v_i||_i^2) < c ||v||`` beyond rounding.
    """
    specs = tuple(specs)
    if not specs:
        raise ValueError("direct_sum needs at least one block")
    if not c > 0:
        raise ValueError(f"Semi-equivalence constant must be positive, got {c}")
    total = sum(spec.dim for spec in specs)
    norm = norm or NormSpec.euclidean(total)
    if norm.dim != total:
        raise DimensionMismatch(f"Total norm acts on R^{norm.dim}, blocks span R^{total}")
    result = DirectSumOf(specs, float(c), norm)
    vectors = verification_vectors(total, _SEMI_EQUIVALENCE_SAMPLES, _SEMI_EQUIVALENCE_SEED)
    block = result.block_norm(vectors)
    target = c * norm.evaluate(vectors)
    excess = target - block
    worst = int(np.argmax(excess))
    if excess[worst] > _SEMI_EQUIVALENCE_SLACK * max(1.0, float(block[worst])):
        raise SemiEquivalenceViolated(
            f"c={c} too large for {norm.label}: sampled v={vectors[worst].tolist()} gives "
            f"block norm {block[worst]:.17g} < c*|v| = {target[worst]:.17g}"
        )
    logger.debug(f"direct sum of {len(specs)} blocks accepted with c={c}")
    return result
