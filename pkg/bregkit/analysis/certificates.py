"""Sampled checks of documented gauges and strong-convexity certificates."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core import INTERIOR, EntropySpec
from ..entropies import PairDomainSpec, StrongConvexityCertificate
from ..gauges import GaugeSpec
from ..norms import sample_unit_sphere
from .convexity import LAMBDA_GRID, convexity_gaps
from .reports import ProbeReport, log_report
from .sampling import Sampler

GAUGE_TOLERANCE = 1e-9
STRONG_CONVEXITY_TOLERANCE = 1e-9
SEQUENTIAL_TOLERANCE = 1e-9


def gauge_check(
    spec: EntropySpec,
    gauge: GaugeSpec,
    pair: PairDomainSpec,
    sampler: Sampler,
    tolerance: float = GAUGE_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Check ``psi(|x - y|) <= B(x, y)`` on sampled ``x in S1``, ``y in S2``.

    A sample violates the claim when ``psi(t) > B + tolerance * max(1, B)``.
    """
    xs, ys = sampler.draw_pairs(pair.s1, pair.s2)
    t = spec.norm.evaluate(xs - ys)
    divergence = spec.divergences(xs, ys)
    bound = np.asarray(gauge(t), dtype=float)
    margins = divergence + tolerance * np.maximum(1.0, divergence) - bound

    def witness(k: int):
        return {"x": xs[k], "y": ys[k], "t": t[k], "psi": bound[k], "B": divergence[k]}

    report = ProbeReport.from_margins(
        name or f"gauge/{spec.name}",
        sampler.seed,
        margins,
        witness,
        details={"gauge": gauge.describe(), "pair": pair.describe()},
    )
    return log_report(report)


def _axis_directions(spec: EntropySpec, rng: np.random.Generator, count: int) -> np.ndarray:
    axes = np.zeros((count, spec.dim))
    axes[np.arange(count), rng.integers(0, spec.dim, count)] = 1.0
    return axes / spec.norm.evaluate(axes)[:, None]


def strong_convexity_check(
    spec: EntropySpec,
    cert: StrongConvexityCertificate,
    sampler: Sampler,
    tolerance: float = STRONG_CONVEXITY_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Check a certificate along two routes.

    Gap route: ``gap >= 0.5 mu lam (1 - lam) |x - y|^2 - tolerance * max(1, gap)``
    for sampled ``x, y`` in the certified set and ``lam`` from the grid.

    Hessian route: ``b''(z)(w, w) >= mu - tolerance * max(1, b''(z)(w, w))`` for
    sampled interior ``z`` and unit ``w``, half of them coordinate axes.
    """
    region = cert.region
    rng = sampler.generator()
    count = sampler.count

    xs = region.sample(rng, count)
    ys = region.sample(rng, count)
    lams = rng.choice(LAMBDA_GRID, count)
    gaps = convexity_gaps(spec, xs, ys, lams)
    t = spec.norm.evaluate(xs - ys)
    required = 0.5 * cert.mu * lams * (1.0 - lams) * t**2
    gap_margins = gaps - required + tolerance * np.maximum(1.0, np.abs(gaps))

    zs = region.sample(rng, count)
    half = count // 2
    ws = np.vstack(
        [sample_unit_sphere(spec.norm, rng, half), _axis_directions(spec, rng, count - half)]
    )
    interior = spec.status_codes(zs) == INTERIOR
    zs, ws = zs[interior], ws[interior]
    curvature = spec.hessian_quadforms(zs, ws) if zs.shape[0] else np.zeros(0)
    hess_margins = curvature - cert.mu + tolerance * np.maximum(1.0, np.abs(curvature))

    n_gap = gap_margins.shape[0]

    def witness(k: int):
        if k < n_gap:
            return {
                "route": "gap",
                "x": xs[k],
                "y": ys[k],
                "lambda": lams[k],
                "gap": gaps[k],
                "required": required[k],
            }
        k -= n_gap
        return {
            "route": "hessian",
            "z": zs[k],
            "w": ws[k],
            "curvature": curvature[k],
            "mu": cert.mu,
        }

    report = ProbeReport.from_margins(
        name or f"strong_convexity/{spec.name}",
        sampler.seed,
        np.concatenate([gap_margins, hess_margins]),
        witness,
        details={
            "certificate": cert.to_dict(),
            "gap_samples": n_gap,
            "hessian_samples": int(hess_margins.shape[0]),
        },
    )
    return log_report(report)


def sequential_consistency_probe(
    spec: EntropySpec,
    cert: StrongConvexityCertificate,
    sampler: Sampler,
    tolerance: float = SEQUENTIAL_TOLERANCE,
    name: Optional[str] = None,
) -> ProbeReport:
    """Check ``|x - y| <= sqrt(2 B(x, y) / mu) + tolerance * max(1, |x - y|)`` on the certified set."""
    xs, ys = sampler.draw_pairs(cert.region, cert.region)
    divergence = spec.divergences(xs, ys)
    t = spec.norm.evaluate(xs - ys)
    with np.errstate(invalid="ignore"):
        bound = np.sqrt(2.0 * np.maximum(divergence, 0.0) / cert.mu)
    margins = bound + tolerance * np.maximum(1.0, t) - t

    def witness(k: int):
        return {"x": xs[k], "y": ys[k], "t": t[k], "B": divergence[k], "mu": cert.mu}

    report = ProbeReport.from_margins(
        name or f"sequential/{spec.name}",
        sampler.seed,
        margins,
        witness,
        details={"certificate": cert.to_dict()},
    )
    return log_report(report)
