"""Quadratic entropies ``0.5 <Ax, x>`` with positive definite A."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from ..core import Zone
from ..norms import NormSpec
from .base import CatalogEntropy


@dataclass(frozen=True, eq=False)
class Quadratic(CatalogEntropy):
    """``b(x) = 0.5 <Ax, x>`` on R^n.

    ``A`` is replaced by ``(A + A^T) / 2`` on construction and must be
    positive definite. ``dim`` is taken from ``A`` when omitted.

    Example:
        >>> Quadratic(np.eye(2)).grad([3.0, -1.0])
        array([ 3., -1.])
    """

    matrix: Any = None
    dim: Optional[int] = None  # type: ignore[assignment]
    norm: Optional[NormSpec] = None

    def __post_init__(self) -> None:
        if self.matrix is None:
            raise ValueError("Quadratic needs a matrix")
        a = np.array(self.matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"Quadratic matrix must be square, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("Quadratic matrix has non-finite entries")
        a = 0.5 * (a + a.T)
        a.setflags(write=False)
        if self.dim is None:
            object.__setattr__(self, "dim", a.shape[0])
        elif self.dim != a.shape[0]:
            raise ValueError(f"Quadratic matrix is {a.shape}, dim is {self.dim}")
        lowest = float(np.linalg.eigvalsh(a)[0])
        if lowest <= 0:
            raise ValueError(
                f"Quadratic matrix must be positive definite, smallest eigenvalue {lowest}"
            )
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "_lowest", lowest)
        self._setup()

    @classmethod
    def identity(cls, dim: int, norm: Optional[NormSpec] = None) -> "Quadratic":
        return cls(np.eye(dim), norm=norm)

    @classmethod
    def random_spd(
        cls, dim: int, seed: int, norm: Optional[NormSpec] = None
    ) -> "Quadratic":
        """Random SPD matrix ``G^T G / dim + I / 2`` from a seeded generator."""
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((dim, dim))
        return cls(g.T @ g / dim + 0.5 * np.eye(dim), norm=norm)

    @property
    def name(self) -> str:
        return "quadratic"

    @property
    def min_eigenvalue(self) -> float:
        return self._lowest  # type: ignore[attr-defined]

    def zone(self) -> Zone:
        return Zone.whole(self.dim)

    @property
    def essentially_smooth(self) -> bool:
        return True

    @property
    def legendre(self) -> bool:
        return True

    def _value(self, xs: np.ndarray) -> np.ndarray:
        return 0.5 * np.einsum("ni,ij,nj->n", xs, self.matrix, xs)

    def _grad(self, xs: np.ndarray) -> np.ndarray:
        return xs @ self.matrix

    def _hessian_quadform(self, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
        return np.einsum("ni,ij,nj->n", ws, self.matrix, ws)

    def _divergence(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        d = xs - ys
        return 0.5 * np.einsum("ni,ij,nj->n", d, self.matrix, d)
