"""Explicit pairs showing where uniform or strong convexity fails, and level-set witnesses."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Union

import numpy as np
from scipy.optimize import brentq

from ..catalog import BGS, HCT, Burg, IteratedLog
from ..core import EntropySpec
from ..errors import GammaTooSmall, NotInZone, QOutOfRange, SOutOfRange

logger = logging.getLogger(__name__)

_ROOT_XTOL = 1e-12


class WitnessKind(str, Enum):
    BGS = "bgs"
    BURG = "burg"
    ITERLOG = "iterlog"
    HCT_HALF = "hct_half"


@dataclass(frozen=True)
class Witness:
    """A pair ``(x, y)`` at parameter ``s`` and the divergence it is built to have.

    Unpacks as ``x, y, b_expected``.
    """

    kind: WitnessKind
    s: float
    x: np.ndarray
    y: np.ndarray
    b_expected: float
    spec: EntropySpec

    def __iter__(self) -> Iterator:
        return iter((self.x, self.y, self.b_expected))

    @property
    def distance(self) -> float:
        return float(np.linalg.norm(self.x - self.y))


def _pair(first_x: float, first_y: float, dim: int, padding: float):
    x = np.full(dim, padding)
    y = np.full(dim, padding)
    x[0], y[0] = first_x, first_y
    return x, y


def uc_failure_witness(kind: Union[WitnessKind, str], s: float, dim: int = 1) -> Witness:
    """Pair of zone points whose divergence decays in ``s`` while the distance does not.

    * ``bgs``: ``x = s``, ``y = s + 1``, ``B = 1 + s log(s / (s + 1))``.
    * ``burg``: ``x = s``, ``y = s + 1``, ``B = log(1 + 1/s) - 1/(s + 1)``.
    * ``iterlog``: ``x = s``, ``y = s + 1`` (needs ``s > 1``),
      ``B = log(log(s + 1) / log s) - 1 / ((s + 1) log(s + 1))``.
    * ``hct_half``: HCT with ``q = 1/2``, ``x = s + sqrt(s)``, ``y = s``,
      ``B = (r - 1) / (r + 1)`` with ``r = sqrt(1 + s^(-1/2))``; here the
      distance ``sqrt(s)`` grows.

    Remaining coordinates are padded with 1 (2 for ``iterlog``).

    Raises:
        SOutOfRange: if ``s < 1`` (``s <= 1`` for ``iterlog``).

    Example:
        >>> round(uc_failure_witness("bgs", 10.0).b_expected, 7)
        0.0468982
    """
    kind = WitnessKind(kind)
    if dim < 1:
        raise ValueError(f"Witness dimension must be >= 1, got {dim}")
    if not (math.isfinite(s) and s >= 1.0):
        raise SOutOfRange(f"Witness parameter must satisfy s >= 1, got {s}")

    if kind is WitnessKind.BGS:
        x, y = _pair(s, s + 1.0, dim, 1.0)
        b = 1.0 + s * math.log1p(-1.0 / (s + 1.0))
        spec: EntropySpec = BGS(dim=dim)
    elif kind is WitnessKind.BURG:
        x, y = _pair(s, s + 1.0, dim, 1.0)
        b = math.log1p(1.0 / s) - 1.0 / (s + 1.0)
        spec = Burg(dim=dim)
    elif kind is WitnessKind.ITERLOG:
        if s <= 1.0:
            raise SOutOfRange(f"iterlog witness needs s > 1, got {s}")
        x, y = _pair(s, s + 1.0, dim, 2.0)
        b = math.log1p(math.log1p(1.0 / s) / math.log(s)) - 1.0 / ((s + 1.0) * math.log(s + 1.0))
        spec = IteratedLog(dim=dim)
    else:
        x, y = _pair(s + math.sqrt(s), s, dim, 1.0)
        u = 1.0 / math.sqrt(s)
        r = math.sqrt(1.0 + u)
        b = u / (r + 1.0) ** 2
        spec = HCT(q=0.5, dim=dim)
    return Witness(kind=kind, s=float(s), x=x, y=y, b_expected=b, spec=spec)


@dataclass(frozen=True)
class StrongConvexityWitness:
    """``ratio = B(x, y) / (0.5 |x - y|_2^2)`` next to its closed form. Unpacks as ``x, y, ratio``."""

    q: float
    param: float
    x: np.ndarray
    y: np.ndarray
    ratio: float
    ratio_expected: float

    def __iter__(self) -> Iterator:
        return iter((self.x, self.y, self.ratio))


def sc_failure_witness(q: float, param: float) -> StrongConvexityWitness:
    """One-dimensional HCT pair whose divergence-to-distance ratio tends to 0.

    For ``q > 2`` the parameter is ``eps`` in (0, 1) with ``x = 2 eps``,
    ``y = eps`` and ratio ``2 (2^q - 1 - q) eps^(q-2) / (q - 1)``. For ``q`` in
    (0, 2) without 1 it is ``y1 > 1`` with ``x = 1``, ``y = y1``.

    Raises:
        QOutOfRange: for ``q <= 0``, ``q = 1`` or ``q = 2``.
        SOutOfRange: if the parameter is outside its range.
    """
    if not math.isfinite(q) or q <= 0.0 or q in (1.0, 2.0):
        raise QOutOfRange(f"sc_failure_witness needs q in (0, 1), (1, 2) or (2, inf), got {q}")
    spec = HCT(q=q, dim=1)
    if q > 2.0:
        if not 0.0 < param < 1.0:
            raise SOutOfRange(f"eps must lie in (0, 1), got {param}")
        x, y = np.array([2.0 * param]), np.array([param])
        expected = 2.0 * (2.0**q - 1.0 - q) * param ** (q - 2.0) / (q - 1.0)
    else:
        if not (math.isfinite(param) and param > 1.0):
            raise SOutOfRange(f"y1 must exceed 1, got {param}")
        x, y = np.array([1.0]), np.array([float(param)])
        gap = 1.0 - param**q - q * param ** (q - 1.0) * (1.0 - param)
        expected = gap / (0.5 * (q - 1.0) * (1.0 - param) ** 2)
    ratio = spec.divergence_closed(x, y) / (0.5 * float(np.sum((x - y) ** 2)))
    return StrongConvexityWitness(
        q=q, param=float(param), x=x, y=y, ratio=ratio, ratio_expected=expected
    )


def hct_negq_levelset_witness(q: float, x, gamma: float) -> float:
    """Threshold ``t0`` with ``(t0, inf)^n`` inside the level set ``{y : B(x, y) <= gamma}``.

    Each coordinate term ``(x^q - t^q - q t^(q-1) (x - t)) / (1 - q)`` decreases
    to 0 on ``(0, x]`` and stays below ``x^q / (1 - q)`` beyond it, so the
    largest root of ``term = gamma / n`` bounds the set from below.

    Raises:
        QOutOfRange: if ``q >= 0``.
        NotInZone: if some coordinate of ``x`` is below 1.
        GammaTooSmall: if ``gamma <= max(n x_k^q / (1 - q))``.

    Example:
        >>> t0 = hct_negq_levelset_witness(-1.0, [1.0], 1.0)
        >>> HCT(q=-1.0).divergence_closed([1.0], [1e6]) <= 1.0
        True
    """
    if not (math.isfinite(q) and q < 0.0):
        raise QOutOfRange(f"hct_negq_levelset_witness needs q < 0, got {q}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.ndim != 1 or not np.all(np.isfinite(x)):
        raise ValueError(f"x must be a finite vector, got {x.tolist()}")
    if np.any(x < 1.0):
        raise NotInZone(f"x must lie in [1, inf)^n, got {x.tolist()}")
    n = x.shape[0]
    threshold = float(np.max(n * x**q / (1.0 - q)))
    if not gamma > threshold:
        raise GammaTooSmall(f"gamma must exceed {threshold:.17g}, got {gamma}")
    share = gamma / n

    roots = []
    for xk in x:

        def excess(t: float, xk: float = float(xk)) -> float:
            return (xk**q - t**q - q * t ** (q - 1.0) * (xk - t)) / (1.0 - q) - share

        lo = xk
        while excess(lo) <= 0.0:
            lo *= 0.5
        root = float(np.nextafter(brentq(excess, lo, xk, xtol=_ROOT_XTOL), math.inf))
        while excess(root) > 0.0:
            root = float(np.nextafter(root + _ROOT_XTOL, math.inf))
        roots.append(root)
    t0 = max(roots)
    logger.debug(f"negative-q level set threshold t0={t0:.17g} for gamma={gamma}")
    return t0
