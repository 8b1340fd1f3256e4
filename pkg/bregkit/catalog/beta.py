"""Beta and (alpha, beta) entropies built from power functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import Zone
from ..errors import QOutOfRange
from ..norms import NormSpec
from .base import CatalogEntropy, itakura_saito_terms, kl_terms, xlogx


@dataclass(frozen=True, eq=False)
class Beta(CatalogEntropy):
    """Beta entropy interpolating Itakura-Saito (beta=0), KL (beta=1) and l2 (beta=2).

    For beta outside {0, 1}:
    ``b(x) = sum (x^beta - beta x + beta - 1) / (beta (beta - 1))``.
    beta=1 uses ``x log x - x + 1`` and beta=0 uses ``x - log x - 1``, the
    limits of the general formula. The Hessian is ``sum x^(beta-2) w^2`` in
    every case.

    Raises:
        QOutOfRange: if beta is negative or not finite.
    """

    beta: float = 1.0
    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.beta) or self.beta < 0:
            raise QOutOfRange(f"Beta entropy needs beta >= 0, got {self.beta}")
        self._setup()

    @property
    def name(self) -> str:
        return f"beta({self.beta:g})"

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 0.0, closed=self.beta > 0)

    @property
    def essentially_smooth(self) -> bool:
        return self.beta <= 1

    @property
    def legendre(self) -> bool:
        return self.beta <= 1

    def _value(self, xs: np.ndarray) -> np.ndarray:
        b = self.beta
        if b == 1.0:
            return np.sum(xlogx(xs) - xs + 1.0, axis=-1)
        if b == 0.0:
            return np.sum(xs - np.log(xs) - 1.0, axis=-1)
        return np.sum(xs**b - b * xs + b - 1.0, axis=-1) / (b * (b - 1.0))

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        b = self.beta
        if b == 1.0:
            return np.log(xs)
        if b == 0.0:
            return 1.0 - 1.0 / xs
        return (xs ** (b - 1.0) - 1.0) / (b - 1.0)

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        return np.sum(xs ** (self.beta - 2.0) * ws**2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        b = self.beta
        if b == 1.0:
            return np.sum(kl_terms(xs, ys), axis=-1)
        if b == 0.0:
            return np.sum(itakura_saito_terms(xs, ys), axis=-1)
        # x (x^(b-1) - y^(b-1)) written as x^b - x y^(b-1) so x = 0 stays finite
        terms = (xs**b - xs * ys ** (b - 1.0)) / (b - 1.0) - (xs**b - ys**b) / b
        return np.sum(terms, axis=-1)


@dataclass(frozen=True, eq=False)
class AlphaBeta(CatalogEntropy):
    """``b(x) = sum (x_k^alpha - x_k^beta)`` with ``alpha >= 1`` and ``0 < beta < 1``."""

    alpha: float = 2.0
    beta: float = 0.5
    dim: int = 1
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha) and self.alpha >= 1.0):
            raise QOutOfRange(f"AlphaBeta needs alpha >= 1, got {self.alpha}")
        if not (0.0 < self.beta < 1.0):
            raise QOutOfRange(f"AlphaBeta needs beta in (0, 1), got {self.beta}")
        self._setup()

    @property
    def name(self) -> str:
        return f"alphabeta({self.alpha:g},{self.beta:g})"

    def zone(self) -> Zone:
        return Zone.orthant(self.dim, 0.0, closed=True)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return np.sum(xs**self.alpha - xs**self.beta, axis=-1)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        a, b = self.alpha, self.beta
        return a * xs ** (a - 1.0) - b * xs ** (b - 1.0)

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        a, b = self.alpha, self.beta
        curvature = b * (1.0 - b) * xs ** (b - 2.0)
        if a != 1.0:
            curvature = curvature + a * (a - 1.0) * xs ** (a - 2.0)
        return np.sum(curvature * ws**2, axis=-1)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        a, b = self.alpha, self.beta
        if a == 1.0:
            terms = b * ys ** (b - 1.0) * (xs - ys) + ys**b - xs**b
        else:
            terms = (
                (xs**a - xs**b)
                - (ys**a - ys**b)
                - (xs - ys) * (a * ys ** (a - 1.0) - b * ys ** (b - 1.0))
            )
        return np.sum(terms, axis=-1)
