"""Negative Boltzmann-Gibbs-Shannon entropy and the Kullback-Leibler divergence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import Zone
from ..norms import NormSpec
from .base import CatalogEntropy, kl_terms, xlogx


@dataclass(frozen=True, eq=False)
class BGS(CatalogEntropy):
    """``b(x) = sum x_k log x_k`` on the closed nonnegative orthant.

    The induced divergence is the generalized Kullback-Leibler divergence
    ``sum x log(x/y) - x + y``; ``0 log 0`` is taken as 0.

    Example:
        >>> BGS(dim=2).divergence_closed([0.0, 1.0], [1.0, 1.0])
        1.0
    """

    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        self._setup()

    @property
    def name(self) -> str:
        return "bgs"

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 0.0, closed=True)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return np.sum(xlogx(xs), axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        return np.log(xs) + 1.0

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        return np.sum(ws**2 / xs, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        return np.sum(kl_terms(xs, ys), axis=-1)
