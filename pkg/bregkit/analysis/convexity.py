"""Convexity gaps and the sampled modulus of uniform convexity."""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from ..core import OUTSIDE, EntropySpec, as_batch
from ..entropies import PairDomainSpec
from ..errors import SegmentLeavesDomain
from ..norms import sample_unit_sphere
from .reports import ModulusBucket, ModulusTable, ProbeReport
from .sampling import Sampler

logger = logging.getLogger(__name__)

LAMBDA_GRID = np.concatenate(([0.01], np.round(np.arange(1, 20) * 0.05, 2), [0.99]))
BUCKET_RATIO = 1.05
MIN_MODULUS_SAMPLES = 1_000
MIN_BUCKET_SAMPLES = 20
LOWER_BOUND_TOLERANCE = 1e-9


def convexity_gaps(spec: EntropySpec, xs, ys, lams) -> np.ndarray:
    """Row-wise ``lam b(x) + (1 - lam) b(y) - b(lam x + (1 - lam) y)``.

    Rows with ``x == y`` are exactly zero. Callers make sure both ends lie in
    dom(b); the domain is a product of half-lines, so the segment does too.
    """
    xs = as_batch(xs, spec.dim)
    ys = as_batch(ys, spec.dim, "y")
    lams = np.broadcast_to(np.asarray(lams, dtype=float), (xs.shape[0],))
    zs = lams[:, None] * xs + (1.0 - lams)[:, None] * ys
    gaps = lams * spec.values(xs) + (1.0 - lams) * spec.values(ys) - spec.values(zs)
    return np.where(np.all(xs == ys, axis=-1), 0.0, gaps)


def convexity_gap(spec: EntropySpec, x, y, lam: float) -> float:
    """Convexity gap of ``b`` on the segment ``[x, y]`` at weight ``lam``.

    Raises:
        ValueError: if ``lam`` is not in (0, 1).
        SegmentLeavesDomain: if ``x`` or ``y`` is outside dom(b).

    Example:
        >>> convexity_gap(Quadratic.identity(1), [0.0], [2.0], 0.5)
        0.5
    """
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    x = spec.vector(x)
    y = spec.vector(y, "y")
    codes = spec.zone().status_codes(np.vstack([x, y]))
    if np.any(codes == OUTSIDE):
        raise SegmentLeavesDomain(
            f"Segment [{x.tolist()}, {y.tolist()}] leaves dom(b) of {spec.name}"
        )
    return float(convexity_gaps(spec, x[None, :], y[None, :], lam)[0])


_MIN_LAMBDA_WEIGHT = float(np.min(LAMBDA_GRID * (1.0 - LAMBDA_GRID)))


def normalized_gap_minimum(spec: EntropySpec, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """``min over LAMBDA_GRID of gap / (lam (1 - lam))`` per row."""
    best = np.full(xs.shape[0], math.inf)
    for lam in LAMBDA_GRID:
        best = np.minimum(best, convexity_gaps(spec, xs, ys, lam) / (lam * (1.0 - lam)))
    return best


# ---------------------------------------------------------------------- #
# Modulus estimation
# ---------------------------------------------------------------------- #
def modulus_buckets(t_min: float, t_max: float, ratio: float = BUCKET_RATIO) -> np.ndarray:
    """Bucket edges ``0, t_min, t_min * ratio, ...`` up to the first edge >= ``t_max``."""
    if not 0.0 < t_min < t_max:
        raise ValueError(f"Need 0 < t_min < t_max, got {t_min}, {t_max}")
    if not ratio > 1.0:
        raise ValueError(f"Bucket ratio must exceed 1, got {ratio}")
    count = int(math.ceil(math.log(t_max / t_min) / math.log(ratio)))
    return np.concatenate(([0.0], t_min * ratio ** np.arange(count + 1)))


def _bucket_distances(lo: float, hi: float, offsets: np.ndarray) -> np.ndarray:
    """Log-uniform distances in ``(lo, hi]``; the first bucket uses ``(hi / 2, hi]``."""
    lo = lo if lo > 0 else 0.5 * hi
    return lo * (hi / lo) ** offsets


def modulus_estimate(
    spec: EntropySpec,
    pair: PairDomainSpec,
    t_grid: Sequence[float],
    sampler: Sampler,
) -> ModulusTable:
    """Sampled upper estimate of the modulus of uniform convexity on ``pair``.

    ``sampler.count`` base draws ``(x, u, r)`` are taken once: ``x`` from
    ``S1``, ``u`` a unit direction in the entropy's norm and ``r`` in (0, 1].
    Every bucket ``(lo, hi]`` reuses them with ``y = x + t u`` and
    ``t = lo (hi / lo)^r``, keeping the draws whose ``y`` lies in ``S2``. So
    each bucket sees the same starting points and directions, and for convex
    ``S2`` the draws kept at a distance are also kept at every shorter one.
    Each kept pair contributes ``min over lambda of gap / (lambda (1 -
    lambda))``; a bucket keeps the smallest contribution, or ``inf`` when
    nothing was kept.

    Args:
        spec: Entropy under test.
        pair: Sets ``S1`` and ``S2``; both must lie in dom(b).
        t_grid: Increasing bucket edges starting at 0, see :func:`modulus_buckets`.
        sampler: Seed and number of base draws (at least 1000).

    Returns:
        The bucket table together with every kept ``(t, value)``.

    Raises:
        EmptyPair: if a descriptor admits no points.
    """
    edges = np.asarray(t_grid, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or edges[0] != 0.0 or np.any(np.diff(edges) <= 0):
        raise ValueError("t_grid must be increasing bucket edges starting at 0")
    if sampler.count < MIN_MODULUS_SAMPLES:
        raise ValueError(f"modulus_estimate needs at least {MIN_MODULUS_SAMPLES} samples")

    rng = sampler.generator()
    xs = pair.s1.sample(rng, sampler.count)
    directions = sample_unit_sphere(spec.norm, rng, sampler.count)
    offsets = 1.0 - rng.random(sampler.count)

    n_buckets = edges.size - 1
    psi = np.full(n_buckets, math.inf)
    counts = np.zeros(n_buckets, dtype=int)
    distances, values = [], []
    for k in range(n_buckets):
        t = _bucket_distances(edges[k], edges[k + 1], offsets)
        ys = xs + t[:, None] * directions
        kept = pair.s2.contains(ys)
        if not np.any(kept):
            continue
        found = np.maximum(normalized_gap_minimum(spec, xs[kept], ys[kept]), 0.0)
        psi[k] = float(np.min(found))
        counts[k] = found.size
        distances.append(t[kept])
        values.append(found)

    lo, hi = edges[:-1], edges[1:]
    centers = np.where(lo > 0, np.sqrt(lo * hi), 0.5 * hi)
    buckets = [
        ModulusBucket(float(c), float(h - l), float(p), int(n))
        for c, l, h, p, n in zip(centers, lo, hi, psi, counts)
    ]
    logger.info(
        f"modulus of {spec.name}: {sampler.count} base draws, {int(counts.sum())} kept pairs in "
        f"{int(np.count_nonzero(counts))} nonempty buckets"
    )
    return ModulusTable(
        buckets=buckets,
        pair=pair.describe(),
        edges=edges,
        seed=sampler.seed,
        distances=np.concatenate(distances) if distances else np.zeros(0),
        values=np.concatenate(values) if values else np.zeros(0),
    )


def modulus_scaling_check(
    table: ModulusTable,
    slack: float = 0.1,
    name: str = "modulus/scaling",
    min_samples: int = MIN_BUCKET_SAMPLES,
) -> ProbeReport:
    """Diagnostic check of ``psi(c t) >= c^2 psi(t)`` on pairs of estimated buckets.

    Every pair of buckets ``i < j`` with finite positive estimates and at
    least ``min_samples`` kept pairs is compared with the smallest ratio the
    two buckets allow, ``c = lo_j / hi_i``, allowing ``slack * c^2 * psi_i``.
    The first bucket ``(0, t_min]`` has no lower edge and is left out.
    """
    lo, hi = table.edges[:-1], table.edges[1:]
    keep = [
        k
        for k, b in enumerate(table.buckets)
        if lo[k] > 0 and b.n_samples >= min_samples and math.isfinite(b.psi_hat) and b.psi_hat > 0
    ]
    if len(keep) < 2:
        return ProbeReport(name, table.seed, 0, 0, math.inf)
    keep = np.array(keep)
    psi = np.array([table.buckets[k].psi_hat for k in keep])
    i, j = np.triu_indices(keep.size, k=1)
    c2 = (lo[keep[j]] / hi[keep[i]]) ** 2
    margins = psi[j] - (1.0 - slack) * c2 * psi[i]

    def witness(k: int):
        return {
            "t": hi[keep[i[k]]],
            "ct": lo[keep[j[k]]],
            "psi_t": psi[i[k]],
            "psi_ct": psi[j[k]],
        }

    return ProbeReport.from_margins(
        name, table.seed, margins, witness, details={"slack": slack, "buckets": int(keep.size)}
    )


def modulus_lower_bound_check(
    table: ModulusTable,
    mu: float,
    tolerance: float = LOWER_BOUND_TOLERANCE,
    name: str = "modulus/lower_bound",
) -> ProbeReport:
    """Check ``psi_hat >= mu lo^2 / 2`` on every nonempty bucket ``(lo, hi]``.

    A ``mu``-strongly convex entropy has ``gap >= mu lam (1 - lam) t^2 / 2``
    for every pair at distance ``t``, so no kept pair can go below the bound
    at its bucket's lower edge. The gap tolerance ``tolerance * max(1,
    psi_hat)`` is divided by the smallest ``lam (1 - lam)`` of the grid.
    """
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    lo = table.edges[:-1]
    nonempty = np.array([b.n_samples > 0 and math.isfinite(b.psi_hat) for b in table.buckets])
    psi = np.array([b.psi_hat for b in table.buckets])[nonempty]
    bound = 0.5 * mu * lo[nonempty] ** 2
    margins = psi - bound + tolerance * np.maximum(1.0, psi) / _MIN_LAMBDA_WEIGHT
    edges = lo[nonempty]

    def witness(k: int):
        return {"t": edges[k], "psi_hat": psi[k], "bound": bound[k]}

    return ProbeReport.from_margins(name, table.seed, margins, witness, details={"mu": mu})


def modulus_upper_bound_margins(table: ModulusTable) -> np.ndarray:
    """``value - psi_hat(bucket)`` per kept pair; never negative since ``psi_hat`` is the bucket minimum."""
    psi = np.array([b.psi_hat for b in table.buckets])
    return table.values - psi[table.bucket_index(table.distances)]
