"""Negative Burg entropy and the Itakura-Saito divergence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import Zone
from ..norms import NormSpec
from .base import CatalogEntropy, itakura_saito_terms


@dataclass(frozen=True, eq=False)
class Burg(CatalogEntropy):
    """``b(x) = -sum log x_k`` on the open positive orthant.

    Example:
        >>> Burg(dim=2).value([1.0, 2.718281828459045])
        -1.0
    """

    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        self._setup()

    @property
    def name(self) -> str:
        return "burg"

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 0.0, closed=False)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return -np.sum(np.log(xs), axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        return -1.0 / xs

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        return np.sum(ws**2 / xs**2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return np.sum(itakura_saito_terms(xs, ys), axis=-1)
