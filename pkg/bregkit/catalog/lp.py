"""Half squared lp norm, 1 < p <= 2."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import Zone
from ..errors import QOutOfRange
from ..norms import NormSpec
from .base import CatalogEntropy


@dataclass(frozen=True, eq=False)
class L2Lp(CatalogEntropy):
    """``b(x) = 0.5 * ||x||_p^2`` on R^n.

    The ambient norm defaults to ``lp:p``, the norm in which b is
    ``(p - 1)``-strongly convex. For ``p < 2`` the Hessian blows up on the
    coordinate hyperplanes; ``hessian_quadform`` returns ``inf`` there when
    ``w`` has a component across them.
    """

    p: float = 2.0
    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and 1.0 < self.p <= 2.0):
            raise QOutOfRange(f"L2Lp needs p in (1, 2], got {self.p}")
        if self.norm is None:
            object.__setattr__(self, "norm", NormSpec.lp(self.p, self.dim))
        self._setup()

    @property
    def name(self) -> str:
        return f"l2lp(p={self.p:g})"

    def zone(self) -> Zone:
        return Zone.whole(self.dim)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _pnorm(self, xs: np.ndarray) -> np.ndarray:
        return np.linalg.norm(xs, ord=self.p, axis=-1)

    def _dual_direction(self, xs: np.ndarray) -> np.ndarray:
        return np.sign(xs) * np.abs(xs) ** (self.p - 1.0)

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return 0.5 * self._pnorm(xs) ** 2

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        size = self._pnorm(xs)[:, None]
        scale = np.where(size > 0, size, 1.0) ** (2.0 - self.p)
        return np.where(size > 0, scale * self._dual_direction(xs), 0.0)

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        p = self.p
        if p == 2.0:
            return np.sum(ws**2, axis=-1)
        size = self._pnorm(xs)
        with np.errstate(divide="ignore"):
            diagonal = np.where(ws == 0, 0.0, np.abs(xs) ** (p - 2.0) * ws**2)
        rank_one = np.sum(self._dual_direction(xs) * ws, axis=-1) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (2.0 - p) * size ** (2.0 - 2.0 * p) * rank_one + (p - 1.0) * size ** (
                2.0 - p
            ) * np.sum(diagonal, axis=-1)
        return np.where(size > 0, out, np.inf)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        size_y = self._pnorm(ys)
        pairing = size_y ** (2.0 - self.p) * np.sum(self._dual_direction(ys) * xs, axis=-1)
        return 0.5 * self._pnorm(xs) ** 2 + 0.5 * size_y**2 - pairing
