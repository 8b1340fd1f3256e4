"""Truncated l2-type entropy built from exponentials of paired coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..combinators import direct_sum
from ..core import EntropySpec, Zone
from ..errors import Ell2Overflow
from ..norms import NormSpec
from .base import CatalogEntropy

_EXP_LIMIT = 700.0


@dataclass(frozen=True, eq=False)
class Ell2Type(CatalogEntropy):
    """Sum over ``m`` coordinate pairs ``(t1, t2)`` of
    ``exp((t1 + t2)^2) + exp((t1 - t2)^2) - 2``.

    The ambient norm defaults to the mixed norm whose first ``2 * n_split``
    coordinates carry the l1 norm.

    Raises:
        Ell2Overflow: when a squared pair sum exceeds 700, where ``exp``
            leaves the float range.
    """

    n_split: int = 0
    pairs: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if self.pairs < 1:
            raise ValueError(f"Ell2Type needs at least one pair, got {self.pairs}")
        if not 0 <= self.n_split <= self.pairs:
            raise ValueError(
                f"Ell2Type n_split must lie in [0, {self.pairs}], got {self.n_split}"
            )
        if self.norm is None:
            object.__setattr__(self, "norm", NormSpec.mixed(2 * self.n_split, self.dim))
        self._setup()

    @property
    def dim(self) -> int:  # type: ignore[override]
        return 2 * self.pairs

    @property
    def name(self) -> str:
        return f"ell2(k={self.n_split},m={self.pairs})"

    @property
    def probe_radius(self) -> float:
        return 1.0

    def zone(self) -> Zone:
        return Zone.whole(self.dim)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _split(self, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        t1 = xs[..., 0::2]
        t2 = xs[..., 1::2]
        s = t1 + t2
        d = t1 - t2
        if np.any(s**2 > _EXP_LIMIT) or np.any(d**2 > _EXP_LIMIT):
            raise Ell2Overflow(
                f"Pair exponent exceeds {_EXP_LIMIT:g}; exp would overflow"
            )
        return t1, t2, s, d

    def _value(self, xs: np.ndarray) -> np.ndarray:
        _, _, s, d = self._split(xs)
        return np.sum(np.expm1(s**2) + np.expm1(d**2), axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        _, _, s, d = self._split(xs)
        sum_part = s * np.exp(s**2)
        diff_part = d * np.exp(d**2)
        out = np.empty_like(xs)
        out[..., 0::2] = 2.0 * (sum_part + diff_part)
        out[..., 1::2] = 2.0 * (sum_part - diff_part)
        return out

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        _, _, s, d = self._split(xs)
        along_sum = 2.0 * np.exp(s**2) * (1.0 + 2.0 * s**2)
        along_diff = 2.0 * np.exp(d**2) * (1.0 + 2.0 * d**2)
        w1 = ws[..., 0::2]
        w2 = ws[..., 1::2]
        return np.sum(along_sum * (w1 + w2) ** 2 + along_diff * (w1 - w2) ** 2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        x1, x2, sx, dx = self._split(xs)
        y1, y2, sy, dy = self._split(ys)
        sum_part = sy * np.exp(sy**2)
        diff_part = dy * np.exp(dy**2)
        terms = (
            (np.expm1(sx**2) - np.expm1(sy**2))
            + (np.expm1(dx**2) - np.expm1(dy**2))
            - 2.0 * ((sum_part + diff_part) * (x1 - y1) + (sum_part - diff_part) * (x2 - y2))
        )
        return np.sum(terms, axis=-1)


def ell2_blocks(n_split: int, pairs: int) -> EntropySpec:
    """The same entropy assembled as a direct sum of 2-D blocks.

    The first ``n_split`` blocks carry the l1 norm and the rest the Euclidean
    norm, so the sum of squared block norms dominates ``c`` times the mixed
    norm with ``c = 1 / (2 sqrt(n_split))`` (``c = 1`` without l1 blocks).
    """
    blocks = [
        Ell2Type(n_split=1 if i < n_split else 0, pairs=1) for i in range(pairs)
    ]
    c = 1.0 if n_split == 0 else 1.0 / (2.0 * math.sqrt(n_split))
    return direct_sum(blocks, c, NormSpec.mixed(2 * n_split, 2 * pairs))
