"""Ray search for the diameter of divergence level sets."""

from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from ..core import INTERIOR, EntropySpec
from ..entropies import documented_gauge
from ..errors import Ell2Overflow, NoDocumentedGauge, NotInInterior
from ..norms import NormSpec, sample_unit_sphere
from .reports import ProbeReport, log_report
from .sampling import Sampler

logger = logging.getLogger(__name__)

LEVELSET_TOLERANCE = 1e-6
MAX_DIRECTIONS = 1_000
_MAX_DOUBLINGS = 60
_BISECTIONS = 64
_CHUNK = 128


def _members(spec: EntropySpec, x: np.ndarray, ys: np.ndarray, gamma: float) -> np.ndarray:
    """``y`` in the zone with ``B(x, y) <= gamma``, row by row where exponents overflow.

    Points off the zone have ``B = inf`` and are never members.
    """
    try:
        return spec.divergences(x[None, :], ys) <= gamma
    except Ell2Overflow:
        out = np.zeros(ys.shape[0], dtype=bool)
        for k, y in enumerate(ys):
            try:
                out[k] = spec.divergence_closed(x, y) <= gamma
            except Ell2Overflow:
                out[k] = False
        return out


def ray_extents(
    spec: EntropySpec, x: np.ndarray, gamma: float, directions: np.ndarray
) -> np.ndarray:
    """Largest ``r`` with ``x + r d`` in ``{y : B(x, y) <= gamma}`` per direction.

    ``B(x, x + r d)`` is nondecreasing in ``r`` for convex b, so each ray meets
    the level set in an interval starting at ``x``. The radius is doubled from
    1 until the point leaves the set and then bisected; rays still inside
    after 60 doublings get ``inf``.
    """
    count = directions.shape[0]
    lo = np.zeros(count)
    hi = np.ones(count)
    active = np.ones(count, dtype=bool)
    for _ in range(_MAX_DOUBLINGS):
        if not np.any(active):
            break
        rows = np.flatnonzero(active)
        inside = _members(spec, x, x + hi[rows, None] * directions[rows], gamma)
        lo[rows[inside]] = hi[rows[inside]]
        hi[rows[inside]] *= 2.0
        active[rows[~inside]] = False
    unbounded = active

    for _ in range(_BISECTIONS):
        mid = 0.5 * (lo + hi)
        inside = _members(spec, x, x + mid[:, None] * directions, gamma)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return np.where(unbounded, math.inf, lo)


def sampled_diameter(points: np.ndarray, norm: NormSpec) -> float:
    """Largest pairwise distance in ``norm``, computed in chunks."""
    best = 0.0
    for start in range(0, points.shape[0], _CHUNK):
        block = points[start : start + _CHUNK]
        gaps = norm.evaluate(block[:, None, :] - points[None, :, :])
        best = max(best, float(np.max(gaps)))
    return best


def levelset_probe(
    spec: EntropySpec,
    x,
    gamma: float,
    sampler: Sampler,
    eps_floor: Optional[float] = None,
    tolerance: float = LEVELSET_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Compare the ray-searched diameter of ``{y : B(x, y) <= gamma}`` with its bound.

    With the documented gauge ``psi`` holding outside the ball of radius ``r``
    around ``c``, the diameter is at most
    ``max(2 psi^-1(gamma), 2 r, psi^-1(gamma) + r + |x - c|)``.

    Args:
        spec: Entropy with a documented increasing gauge at ``x``.
        x: Interior point the level set is centred on.
        gamma: Level, at least 0.
        sampler: Seed; at most 1000 directions are searched.
        eps_floor: Coordinate floor forwarded to :func:`documented_gauge`.
        tolerance: Absolute slack on the bound.
        name: Probe name used in the report.

    Raises:
        NoDocumentedGauge: if no increasing gauge is documented at ``x``.
        NotInInterior: if ``x`` is not in the zone.
    """
    if not (math.isfinite(gamma) and gamma >= 0):
        raise ValueError(f"Level must be finite and nonnegative, got {gamma}")
    x = spec.vector(x)
    if spec.zone().status_codes(x) != INTERIOR:
        raise NotInInterior(f"Level sets are probed around interior points; got x={x.tolist()}")
    gauge, pair = documented_gauge(spec, x, eps_floor=eps_floor)
    if not gauge.increasing:
        raise NoDocumentedGauge(f"{gauge.describe()} has no inverse, so no diameter bound")

    radius = pair.s2.radius
    center = pair.s2.middle
    psi_inv = float(gauge.inverse(gamma))
    offset = float(spec.norm.evaluate(x - center))
    bound = max(2.0 * psi_inv, 2.0 * radius, psi_inv + radius + offset)

    count = min(sampler.count, MAX_DIRECTIONS)
    directions = sample_unit_sphere(spec.norm, sampler.generator(), count)
    extents = ray_extents(spec, x, gamma, directions)
    if np.any(np.isinf(extents)):
        diameter = math.inf
    else:
        diameter = sampled_diameter(np.vstack([x, x + extents[:, None] * directions]), spec.norm)
    margin = bound + tolerance - diameter
    logger.debug(f"level set of {spec.name} at gamma={gamma}: diameter {diameter:.6g}, bound {bound:.6g}")

    def witness(_: int):
        far = int(np.argmax(extents))
        return {"x": x, "gamma": gamma, "direction": directions[far], "extent": extents[far]}

    report = ProbeReport.from_margins(
        name or f"levelset/{spec.name}",
        sampler.seed,
        [margin],
        witness,
        details={"diameter": diameter, "bound": bound, "psi_inv": psi_inv, "radius": radius},
    )
    report.samples = count
    return log_report(report)
