"""Norms on R^n and their comparison constants against l2 and l-infinity."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

import numpy as np

from .errors import DimensionMismatch

logger = logging.getLogger(__name__)

LP = "lp"
MIXED = "mixed"

_VERIFY_SAMPLES = 10_000
_VERIFY_SEED = 20_240_601
_VERIFY_SLACK = 1e-12


@dataclass(frozen=True)
class NormSpec:
    """Ambient norm on R^dim.

    Two families are supported: ``lp`` norms with ``p`` in ``[1, inf]`` and the
    mixed norm that sums the absolute values of the first ``split`` coordinates
    and adds the Euclidean norm of the remaining ones.

    Example:
        >>> NormSpec.lp(2, dim=2).evaluate([3.0, 4.0])
        5.0
        >>> NormSpec.mixed(2, dim=4).evaluate([1.0, 1.0, 3.0, 4.0])
        7.0
    """

    kind: str
    dim: int
    p: float = 2.0
    split: int = 0

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"Norm dimension must be >= 1, got {self.dim}")
        if self.kind == LP:
            if not (self.p >= 1.0):
                raise ValueError(f"lp norm needs p in [1, inf], got {self.p}")
        elif self.kind == MIXED:
            if self.split < 0 or self.split % 2 or self.split > self.dim:
                raise ValueError(
                    f"mixed norm split must be even and within [0, {self.dim}], "
                    f"got {self.split}"
                )
        else:
            raise ValueError(f"Unknown norm kind: {self.kind}")

    # ------------------------------------------------------------------ #
    # Constructors
    # ------------------------------------------------------------------ #
    @classmethod
    def lp(cls, p: float, dim: int) -> "NormSpec":
        return cls(kind=LP, dim=dim, p=float(p))

    @classmethod
    def euclidean(cls, dim: int) -> "NormSpec":
        return cls(kind=LP, dim=dim, p=2.0)

    @classmethod
    def mixed(cls, split: int, dim: int) -> "NormSpec":
        return cls(kind=MIXED, dim=dim, split=int(split))

    @classmethod
    def parse(cls, text: str, dim: int) -> "NormSpec":
        """Parse ``lp:P`` (``P`` may be ``inf``) or ``mixed:K``."""
        kind, _, arg = text.strip().partition(":")
        if not arg:
            raise ValueError(f"Norm must look like 'lp:P' or 'mixed:K', got {text!r}")
        if kind == LP:
            p = math.inf if arg.lower() in ("inf", "infinity") else float(arg)
            return cls.lp(p, dim)
        if kind == MIXED:
            return cls.mixed(int(arg), dim)
        raise ValueError(f"Unknown norm kind in {text!r}")

    # ------------------------------------------------------------------ #
    # Evaluation
    # ------------------------------------------------------------------ #
    @property
    def n_split(self) -> int:
        return self.split // 2

    @property
    def label(self) -> str:
        if self.kind == LP:
            return "lp:inf" if math.isinf(self.p) else f"lp:{self.p:g}"
        return f"mixed:{self.split}"

    def evaluate(self, v) -> np.ndarray:
        """Norm along the last axis; returns a float for a single vector."""
        arr = np.asarray(v, dtype=float)
        if arr.shape[-1:] != (self.dim,):
            raise DimensionMismatch(
                f"Expected vectors of length {self.dim}, got shape {arr.shape}"
            )
        if self.kind == LP:
            out = np.linalg.norm(arr, ord=self.p, axis=-1)
        else:
            head = np.sum(np.abs(arr[..., : self.split]), axis=-1)
            tail = np.linalg.norm(arr[..., self.split :], axis=-1)
            out = head + tail
        return float(out) if np.ndim(out) == 0 else out

    def __call__(self, v) -> np.ndarray:
        return self.evaluate(v)


def norm_eval(norm: NormSpec, v) -> float:
    """Evaluate ``norm`` at a single vector ``v``."""
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise DimensionMismatch(f"Expected a vector, got shape {arr.shape}")
    return float(norm.evaluate(arr))


@dataclass(frozen=True)
class EquivalenceConstants:
    """Constants with ``c2 |v| <= |v|_2``, ``|v|_inf <= c_inf |v|`` and ``|v| <= gamma |v|_inf``."""

    c2: float
    c_inf: float
    gamma: float

    def to_dict(self) -> Dict[str, float]:
        return {"c2": self.c2, "c_inf": self.c_inf, "gamma": self.gamma}


def _closed_form_constants(norm: NormSpec) -> EquivalenceConstants:
    n = norm.dim
    if norm.kind == LP:
        p = norm.p
        c2 = 1.0 if p >= 2.0 else n ** (0.5 - 1.0 / p)
        gamma = 1.0 if math.isinf(p) else n ** (1.0 / p)
        return EquivalenceConstants(c2=c2, c_inf=1.0, gamma=gamma)
    k = norm.n_split
    c2 = 1.0 if k == 0 else 1.0 / (2.0 * math.sqrt(k))
    gamma = norm.split + math.sqrt(n - norm.split)
    return EquivalenceConstants(c2=c2, c_inf=1.0, gamma=gamma)


def verification_vectors(dim: int, count: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    quarter = max(count // 4, 1)
    gaussian = rng.standard_normal((quarter, dim))
    cube = rng.uniform(-1.0, 1.0, (quarter, dim))
    signs = rng.choice([-1.0, 1.0], size=(quarter, dim))
    axes = np.zeros((count - 3 * quarter, dim))
    axes[np.arange(axes.shape[0]), rng.integers(0, dim, axes.shape[0])] = 1.0
    axes *= rng.uniform(0.1, 10.0, (axes.shape[0], 1))
    return np.vstack([gaussian, cube, signs, axes])


def constant_margins(
    norm: NormSpec,
    constants: EquivalenceConstants,
    count: int = _VERIFY_SAMPLES,
    seed: int = _VERIFY_SEED,
) -> Dict[str, float]:
    """Worst slack of each inequality over sampled vectors (negative = violated)."""
    vectors = verification_vectors(norm.dim, count, seed)
    values = norm.evaluate(vectors)
    l2 = np.linalg.norm(vectors, axis=-1)
    linf = np.max(np.abs(vectors), axis=-1)
    return {
        "c2": float(np.min(l2 - constants.c2 * values)),
        "c_inf": float(np.min(constants.c_inf * values - linf)),
        "gamma": float(np.min(constants.gamma * linf - values)),
    }


@lru_cache(maxsize=None)
def equivalence_constants(norm: NormSpec) -> EquivalenceConstants:
    """Closed-form comparison constants, checked on sampled vectors once per norm.

    Example:
        >>> equivalence_constants(NormSpec.lp(1, dim=4))
        EquivalenceConstants(c2=0.5, c_inf=1.0, gamma=4.0)
    """
    constants = _closed_form_constants(norm)
    margins = constant_margins(norm, constants)
    worst = min(margins.values())
    if worst < -_VERIFY_SLACK:
        raise RuntimeError(
            f"Equivalence constants for {norm.label} on R^{norm.dim} fail sampling: {margins}"
        )
    logger.debug(f"Constants for {norm.label} on R^{norm.dim}: {constants}")
    return constants


_REJECTION_MAX_DIM = 6


def sample_unit_sphere(norm: NormSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    """Directions of unit norm obtained by rejection from the cube [-1, 1]^n.

    Above six dimensions the acceptance rate of the l1 ball collapses, so
    normalized Gaussian draws are used instead.
    """
    if norm.dim > _REJECTION_MAX_DIM:
        draws = rng.standard_normal((count, norm.dim))
        return draws / norm.evaluate(draws)[:, None]
    accepted = []
    total = 0
    while total < count:
        draws = rng.uniform(-1.0, 1.0, (max(4 * count, 64), norm.dim))
        values = norm.evaluate(draws)
        keep = draws[(values <= 1.0) & (values > 0.0)]
        accepted.append(keep / norm.evaluate(keep)[:, None])
        total += keep.shape[0]
    return np.vstack(accepted)[:count]
