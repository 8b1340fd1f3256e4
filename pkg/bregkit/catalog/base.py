"""Shared plumbing for the concrete entropies."""

from __future__ import annotations

from typing import Optional

import numpy as np
from scipy.special import xlogy

from ..core import EntropySpec, default_norm


class CatalogEntropy(EntropySpec):
    """Base for catalog dataclasses: validates ``dim`` and fills in the norm."""

    def _setup(self) -> None:
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"{type(self).__name__} needs dim >= 1, got {self.dim}")
        object.__setattr__(self, "norm", default_norm(self.norm, self.dim))

    # Every catalog entry is a sequentially consistent Bregman function with the
    # limiting difference property unless it overrides these.
    @property
    def bregman_function(self) -> Optional[bool]:
        return True

    @property
    def sequentially_consistent(self) -> Optional[bool]:
        return True

    @property
    def limiting_difference(self) -> Optional[bool]:
        return True

    @property
    def bounded_level_sets(self) -> Optional[bool]:
        return True


def xlogx(xs: np.ndarray) -> np.ndarray:
    """``x log x`` with the convention ``0 log 0 = 0``."""
    return xlogy(xs, xs)


def kl_terms(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Per-coordinate ``x log(x/y) - x + y`` for x >= 0, y > 0."""
    positive = xs > 0
    safe = np.where(positive, xs, ys)
    ratio_log = np.log1p((safe - ys) / ys)
    return np.where(positive, xs * ratio_log, 0.0) + (ys - xs)


def itakura_saito_terms(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Per-coordinate ``log(y/x) + x/y - 1`` for x, y > 0."""
    return np.log1p((ys - xs) / xs) + (xs - ys) / ys
