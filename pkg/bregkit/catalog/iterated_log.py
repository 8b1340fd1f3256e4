"""Negative iterated-log entropy on (1, inf)^n."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..combinators import translate
from ..core import EntropySpec, Zone
from ..norms import NormSpec
from .base import CatalogEntropy


@dataclass(frozen=True, eq=False)
class IteratedLog(CatalogEntropy):
    """``b(x) = -sum log(log x_k)`` for ``x_k > 1``."""

    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        self._setup()

    @property
    def name(self) -> str:
        return "iterlog"

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 1.0, closed=False)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return -np.sum(np.log(np.log(xs)), axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        return -1.0 / (xs * np.log(xs))

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        inv = 1.0 / (xs * np.log(xs))
        return np.sum(inv * (inv + 1.0 / xs) * ws**2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        # log(log y / log x), with log y - log x formed without cancellation
        log_x = np.log(xs)
        log_ratio = np.log1p(np.log1p((ys - xs) / xs) / log_x)
        return np.sum(log_ratio + (xs - ys) / (ys * np.log(ys)), axis=-1)


def translated_iterated_log(dim: int = 1, norm: Optional[NormSpec] = None) -> EntropySpec:
    """``-sum log(log(1 + x_k))`` on the open orthant.

    Translation by ``z0 = (1, ..., 1)`` evaluates b at ``x + z0`` and moves the
    zone from ``(1, inf)^n`` to ``(0, inf)^n``.
    """
    return translate(IteratedLog(dim=dim, norm=norm), np.ones(dim))
