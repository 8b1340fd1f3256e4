"""Negative Havrda-Charvat-Tsallis entropies indexed by q."""

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
class HCT(CatalogEntropy):
    """Tsallis-type entropy ``b(x) = c * sum (x_k^q - 1)``.

    ``c = 1/(q-1)`` for ``q > 0`` (domain: closed orthant) and
    ``c = 1/(1-q)`` for ``q < 0`` (domain: open orthant). Both choices make b
    convex with ``b''(z)(w,w) = sum |q| z_k^(q-2) w_k^2``. At ``q = 2`` the
    divergence is the squared Euclidean distance.

    Raises:
        QOutOfRange: if ``q`` is 0, 1 or not finite.
    """

    q: float = 2.0
    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.q) or self.q in (0.0, 1.0):
            raise QOutOfRange(f"HCT needs a finite q outside {{0, 1}}, got {self.q}")
        self._setup()

    @property
    def name(self) -> str:
        return f"hct(q={self.q:g})"

    @property
    def coefficient(self) -> float:
        return 1.0 / (self.q - 1.0) if self.q > 0 else 1.0 / (1.0 - self.q)

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 0.0, closed=self.q > 0)

    @property
    def essentially_smooth(self) -> bool:
        return self.q < 1

    @property
    def legendre(self) -> bool:
        return self.q < 1

    @property
    def bregman_function(self) -> Optional[bool]:
        return self.q > 0

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        return True if self.q > 0 else None

    @property
    def limiting_difference(self) -> Optional[bool]:
        return True if self.q > 0 else None

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        # q < 0: {y : B(x, y) <= gamma} contains a translated open orthant
        return self.q > 0

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return self.coefficient * np.sum(xs**self.q - 1.0, axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        return self.coefficient * self.q * xs ** (self.q - 1.0)

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        return np.sum(abs(self.q) * xs ** (self.q - 2.0) * ws**2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        if self.q == 2.0:
            return np.sum((xs - ys) ** 2, axis=-1)
        q = self.q
        terms = xs**q - ys**q - q * ys ** (q - 1.0) * (xs - ys)
        return self.coefficient * np.sum(terms, axis=-1)
