"""Sampled identities every Bregman divergence of the catalog must satisfy."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core import EntropySpec
from .convexity import LAMBDA_GRID, convexity_gaps
from .reports import ProbeReport, log_report
from .sampling import Sampler, probe_points

ORACLE_TOLERANCE = 1e-10
NONNEGATIVITY_TOLERANCE = 1e-12
THREE_POINT_TOLERANCE = 1e-10
CONVEXITY_TOLERANCE = 1e-12
ORACLE_MARGIN = 0.01
BOUNDARY_FRACTION = 0.1
CLOSE_PAIR_RANGE = (1e-3, 2e-3)


def with_boundary_points(spec: EntropySpec, xs: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Move a tenth of the rows onto the closed part of the boundary, if there is one."""
    zone = spec.zone()
    closed = np.flatnonzero(np.isfinite(zone.lower) & zone.closed)
    if closed.size == 0:
        return xs
    xs = xs.copy()
    rows = np.flatnonzero(rng.random(xs.shape[0]) < BOUNDARY_FRACTION)
    cols = rng.choice(closed, rows.size)
    xs[rows, cols] = zone.lower[cols]
    return xs


def oracle_agreement_probe(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = ORACLE_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """``|B_closed - B_generic| <= tolerance * max(1, |B|)`` on interior pairs."""
    rng = sampler.generator()
    xs = probe_points(spec, rng, sampler.count, ORACLE_MARGIN)
    ys = probe_points(spec, rng, sampler.count, ORACLE_MARGIN)
    closed = spec.divergences(xs, ys, closed=True)
    generic = spec.divergences(xs, ys, closed=False)
    margins = tolerance * np.maximum(1.0, np.abs(closed)) - np.abs(closed - generic)

    def witness(k: int):
        return {"x": xs[k], "y": ys[k], "closed": closed[k], "generic": generic[k]}

    report = ProbeReport.from_margins(
        name or f"oracle/{spec.name}", sampler.seed, margins, witness
    )
    return log_report(report)


def nonnegativity_probe(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = NONNEGATIVITY_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Nonnegativity, the identity ``B(x, x) = 0`` and strictness on close pairs.

    ``B >= -tolerance`` on random pairs (a tenth of the ``x`` on the closed
    boundary), ``B(x, x) == 0`` exactly at interior ``x``, and ``B > 0`` for
    pairs at Euclidean distance between 1e-3 and 2e-3.
    """
    rng = sampler.generator()
    count = sampler.count
    xs = with_boundary_points(spec, probe_points(spec, rng, count), rng)
    ys = probe_points(spec, rng, count)
    divergence = spec.divergences(xs, ys)
    sign_margins = divergence + tolerance

    centers = probe_points(spec, rng, count, ORACLE_MARGIN)
    identity = spec.divergences(centers, centers)
    identity_margins = np.where(identity == 0.0, 0.0, -np.abs(identity))

    steps = rng.standard_normal((count, spec.dim))
    steps *= (rng.uniform(*CLOSE_PAIR_RANGE, count) / np.linalg.norm(steps, axis=-1))[:, None]
    close = spec.divergences(centers + steps, centers)
    strict_margins = close
    violated = np.concatenate([sign_margins < 0, identity_margins < 0, strict_margins <= 0])

    n = count

    def witness(k: int):
        if k < n:
            return {"check": "sign", "x": xs[k], "y": ys[k], "B": divergence[k]}
        if k < 2 * n:
            return {"check": "identity", "x": centers[k - n], "B": identity[k - n]}
        k -= 2 * n
        return {"check": "strict", "x": centers[k] + steps[k], "y": centers[k], "B": close[k]}

    report = ProbeReport.from_margins(
        name or f"nonnegativity/{spec.name}",
        sampler.seed,
        np.concatenate([sign_margins, identity_margins, strict_margins]),
        witness,
        violated=violated,
    )
    return log_report(report)


def three_point_probe(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = THREE_POINT_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Three-point identity residual on sampled triples, ``x`` possibly on the boundary."""
    rng = sampler.generator()
    count = sampler.count
    xs = with_boundary_points(spec, probe_points(spec, rng, count, ORACLE_MARGIN), rng)
    ys = probe_points(spec, rng, count, ORACLE_MARGIN)
    zs = probe_points(spec, rng, count, ORACLE_MARGIN)
    b_xz = spec.divergences(xs, zs)
    residual = (
        b_xz
        - spec.divergences(xs, ys)
        - spec.divergences(ys, zs)
        - np.sum((spec.grads(ys) - spec.grads(zs)) * (xs - ys), axis=-1)
    )
    margins = tolerance * np.maximum(1.0, np.abs(b_xz)) - np.abs(residual)

    def witness(k: int):
        return {"x": xs[k], "y": ys[k], "z": zs[k], "residual": residual[k]}

    report = ProbeReport.from_margins(
        name or f"three_point/{spec.name}", sampler.seed, margins, witness
    )
    return log_report(report)


def convexity_gap_probe(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = CONVEXITY_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """``gap >= -tolerance * max(1, |lam b(x)| + |(1-lam) b(y)| + |b(z)|)`` on sampled segments."""
    rng = sampler.generator()
    count = sampler.count
    xs = with_boundary_points(spec, probe_points(spec, rng, count), rng)
    ys = probe_points(spec, rng, count)
    lams = rng.choice(LAMBDA_GRID, count)
    gaps = convexity_gaps(spec, xs, ys, lams)
    zs = lams[:, None] * xs + (1.0 - lams)[:, None] * ys
    scale = (
        np.abs(lams * spec.values(xs))
        + np.abs((1.0 - lams) * spec.values(ys))
        + np.abs(spec.values(zs))
    )
    margins = gaps + tolerance * np.maximum(1.0, scale)

    def witness(k: int):
        return {"x": xs[k], "y": ys[k], "lambda": lams[k], "gap": gaps[k]}

    report = ProbeReport.from_margins(
        name or f"convexity/{spec.name}", sampler.seed, margins, witness
    )
    return log_report(report)
