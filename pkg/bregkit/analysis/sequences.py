"""Probes along explicit sequences: the limiting difference property and gradient blow-up."""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence

import numpy as np

from ..core import INTERIOR, OUTSIDE, EntropySpec
from ..errors import NotEssentiallySmooth, NotInDomain, NotInInterior, SequenceLeavesZone
from .reports import ProbeReport, log_report

logger = logging.getLogger(__name__)

LIMITING_SCHEDULE = tuple(m * 10**k for k in range(4) for m in (1, 2, 5)) + (10_000,)
LIMITING_TOLERANCE = 1e-6
MONOTONE_TAIL_START = 10
MONOTONE_SLACK = 1e-12
BLOWUP_THRESHOLD = 1e6
MAX_DECADES = 300


def limiting_difference_probe(
    spec: EntropySpec,
    x,
    y,
    v,
    steps: Optional[Sequence[int]] = None,
    tolerance: float = LIMITING_TOLERANCE,
    seed: int = 0,
    name: Optional[str] = None,
) -> ProbeReport:
    """Follow ``d_i = B(x, y_i) - B(y, y_i)`` along ``y_i = y + v / i``.

    The error ``|d_i - B(x, y)|`` must not grow on the tail ``i >= 10``
    (slack ``1e-12 max(1, |B|)``), and at the last step it must be within
    ``tolerance * max(1, |B|)``. The error decays like ``|v| / i``, so the
    default schedule ending at ``i = 10^4`` needs ``|v|`` of order ``1e-2``
    or less. The Richardson extrapolation ``(i2 d_i2 - i1 d_i1) / (i2 - i1)``
    of the last two terms is reported alongside.

    Raises:
        NotInDomain: if ``x`` is outside dom(b).
        NotInInterior: if ``y`` is not in the zone.
        SequenceLeavesZone: if some ``y_i`` is not in the zone.
    """
    x = spec.vector(x)
    y = spec.vector(y, "y")
    v = spec.vector(v, "v")
    steps = np.asarray(LIMITING_SCHEDULE if steps is None else steps, dtype=float)
    if steps.ndim != 1 or steps.size < 2 or np.any(steps <= 0) or np.any(np.diff(steps) <= 0):
        raise ValueError("steps must be at least two increasing positive indices")
    zone = spec.zone()
    if zone.status_codes(x) == OUTSIDE:
        raise NotInDomain(f"x={x.tolist()} is outside dom(b) of {spec.name}")
    if zone.status_codes(y) != INTERIOR:
        raise NotInInterior(f"y={y.tolist()} is not in the zone of {spec.name}")

    ys = y + v / steps[:, None]
    off = zone.status_codes(ys) != INTERIOR
    if np.any(off):
        first = int(np.argmax(off))
        raise SequenceLeavesZone(f"y + v/{steps[first]:g} = {ys[first].tolist()} left the zone")

    target = spec.divergence_closed(x, y)
    d = spec.divergences(x[None, :], ys) - spec.divergences(y[None, :], ys)
    errors = np.abs(d - target)
    scale = max(1.0, abs(target))

    tail = np.flatnonzero(steps >= MONOTONE_TAIL_START)
    monotone_margins = errors[tail[:-1]] + MONOTONE_SLACK * scale - errors[tail[1:]]
    i1, i2 = steps[-2], steps[-1]
    extrapolated = (i2 * d[-1] - i1 * d[-2]) / (i2 - i1)
    extrapolated_error = abs(extrapolated - target)
    final_margin = tolerance * scale - errors[-1]
    margins = np.concatenate([monotone_margins, [final_margin]])

    def witness(k: int):
        if k < monotone_margins.size:
            i = tail[k + 1]
            return {"i": steps[i], "d_i": d[i], "error": errors[i], "previous_error": errors[i - 1]}
        return {"i": i2, "d_i": d[-1], "error": errors[-1], "B": target}

    report = ProbeReport.from_margins(
        name or f"limiting/{spec.name}",
        seed,
        margins,
        witness,
        details={"B": target, "raw_error": float(errors[-1]), "extrapolated_error": extrapolated_error},
    )
    return log_report(report)


def _decade_schedule(p: np.ndarray, v: np.ndarray) -> List[float]:
    """``10^k`` for ``k = 0, 1, ...`` while ``p + v / 10^k`` still differs from ``p``."""
    schedule = []
    for k in range(MAX_DECADES + 1):
        i = 10.0**k
        if np.all(p + v / i == p):
            break
        schedule.append(i)
    return schedule


def _gradient_norm(g: np.ndarray) -> float:
    top = float(np.max(np.abs(g)))
    if top == 0.0 or not math.isfinite(top):
        return top
    return top * float(np.linalg.norm(g / top))


def boundary_blowup_probe(
    spec: EntropySpec,
    p,
    v,
    steps: Optional[Sequence[float]] = None,
    threshold: float = BLOWUP_THRESHOLD,
    seed: int = 0,
    name: Optional[str] = None,
) -> ProbeReport:
    """Track ``|b'(p + v / i)|_2`` as ``i`` runs through powers of ten.

    The norm must be strictly increasing from the second step on, and either
    exceed ``threshold`` or keep its per-step increments from decaying (the
    last at least half the first). Logarithmic blow-up, as for BGS, cannot
    reach 1e6 before ``p + v / i`` rounds to ``p``; a bounded gradient has
    geometrically shrinking increments and fails.

    Raises:
        NotEssentiallySmooth: if the entropy is not essentially smooth.
        SequenceLeavesZone: if some ``p + v / i`` is not in the zone.
    """
    if not spec.metadata().essentially_smooth:
        raise NotEssentiallySmooth(f"{spec.name} is not essentially smooth; its gradient stays bounded")
    p = spec.vector(p, "p")
    v = spec.vector(v, "v")
    zone = spec.zone()
    if zone.status_codes(p) == INTERIOR:
        raise ValueError(f"p={p.tolist()} is interior; a boundary point of dom(b) is needed")
    schedule = list(_decade_schedule(p, v) if steps is None else steps)
    if len(schedule) < 3:
        raise ValueError("The walk towards p needs at least three steps")

    norms: List[float] = []
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        for i in schedule:
            point = p + v / i
            if zone.status_codes(point) != INTERIOR:
                raise SequenceLeavesZone(f"p + v/{i:g} = {point.tolist()} left the zone")
            value = _gradient_norm(spec.grad(point))
            if not math.isfinite(value):
                break
            norms.append(value)
    values = np.array(norms)
    tail = values[1:]
    increments = np.diff(tail)
    if increments.size == 0:
        raise ValueError("Gradient norms overflowed before the tail of the walk")
    growth = max(float(np.max(values)) - threshold, float(increments[-1] - 0.5 * increments[0]))
    margins = np.concatenate([increments, [growth]])
    violated = np.concatenate([increments <= 0, [growth < 0]])

    def witness(k: int):
        if k < increments.size:
            return {"i": schedule[k + 2], "norm": tail[k + 1], "previous_norm": tail[k]}
        return {"max_norm": float(np.max(values)), "last_increment": increments[-1], "first_increment": increments[0]}

    report = ProbeReport.from_margins(
        name or f"blowup/{spec.name}",
        seed,
        margins,
        witness,
        violated=violated,
        details={"max_norm": float(np.max(values)), "steps": len(norms)},
    )
    return log_report(report)
