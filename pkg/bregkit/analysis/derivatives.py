"""Finite-difference checks of gradients and Hessian quadratic forms."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core import INTERIOR, EntropySpec
from .reports import ProbeReport, log_report
from .sampling import Sampler, probe_points

GRADIENT_TOLERANCE = 1e-5
HESSIAN_TOLERANCE = 1e-4
BOUNDARY_MARGIN = 0.1
MAX_POINTS = 1_000
_RELATIVE_STEP = 1e-6
_MIN_STEP = 1e-6
_MAX_HALVINGS = 60


def _symmetric_steps(spec: EntropySpec, xs: np.ndarray, directions: np.ndarray, h: np.ndarray):
    """Shrink ``h`` row-wise until ``x +- h d`` stays in the zone."""
    zone = spec.zone()
    for _ in range(_MAX_HALVINGS):
        plus = xs + h[:, None] * directions
        minus = xs - h[:, None] * directions
        inside = (zone.status_codes(plus) == INTERIOR) & (zone.status_codes(minus) == INTERIOR)
        if np.all(inside):
            break
        h = np.where(inside, h, 0.5 * h)
    return plus, minus


def finite_difference_gradient(spec: EntropySpec, xs: np.ndarray) -> np.ndarray:
    """Central differences with ``h_k = max(1e-6, 1e-6 |x_k|)``."""
    out = np.empty_like(xs)
    for k in range(spec.dim):
        axis = np.zeros((xs.shape[0], spec.dim))
        axis[:, k] = 1.0
        h = np.maximum(_MIN_STEP, _RELATIVE_STEP * np.abs(xs[:, k]))
        plus, minus = _symmetric_steps(spec, xs, axis, h)
        out[:, k] = (spec.values(plus) - spec.values(minus)) / (plus[:, k] - minus[:, k])
    return out


def finite_difference_curvature(spec: EntropySpec, xs: np.ndarray, ws: np.ndarray) -> np.ndarray:
    """``<b'(x + h w) - b'(x - h w), w> / (2h)`` per row."""
    h = np.maximum(_MIN_STEP, _RELATIVE_STEP * np.max(np.abs(xs), axis=-1))
    plus, minus = _symmetric_steps(spec, xs, ws, h)
    step = np.linalg.norm(plus - minus, axis=-1) / np.linalg.norm(ws, axis=-1)
    return np.sum((spec.grads(plus) - spec.grads(minus)) * ws, axis=-1) / step


def gradient_check(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = GRADIENT_TOLERANCE,
    margin: float = BOUNDARY_MARGIN,
    name: Optional[str] = None,
) -> ProbeReport:
    """Compare ``grad`` with central differences of ``value`` at interior points.

    Points keep distance ``margin`` from the boundary; the error is
    ``|fd - grad|_inf / max(1, |grad|_inf)``.
    """
    count = min(sampler.count, MAX_POINTS)
    xs = probe_points(spec, sampler.generator(), count, margin)
    exact = spec.grads(xs)
    approx = finite_difference_gradient(spec, xs)
    scale = np.maximum(1.0, np.max(np.abs(exact), axis=-1))
    errors = np.max(np.abs(approx - exact), axis=-1) / scale
    margins = tolerance - errors

    def witness(k: int):
        return {"x": xs[k], "grad": exact[k], "finite_difference": approx[k], "error": errors[k]}

    report = ProbeReport.from_margins(
        name or f"gradient/{spec.name}", sampler.seed, margins, witness
    )
    return log_report(report)


def hessian_check(
    spec: EntropySpec,
    sampler: Sampler,
    tolerance: float = HESSIAN_TOLERANCE,
    margin: float = BOUNDARY_MARGIN,
    name: Optional[str] = None,
) -> ProbeReport:
    """Compare ``hessian_quadform`` with directional differences of ``grad``."""
    count = min(sampler.count, MAX_POINTS)
    rng = sampler.generator()
    xs = probe_points(spec, rng, count, margin)
    ws = rng.standard_normal((count, spec.dim))
    ws /= np.linalg.norm(ws, axis=-1)[:, None]
    exact = spec.hessian_quadforms(xs, ws)
    approx = finite_difference_curvature(spec, xs, ws)
    errors = np.abs(approx - exact) / np.maximum(1.0, np.abs(exact))
    margins = tolerance - errors

    def witness(k: int):
        return {"x": xs[k], "w": ws[k], "hessian": exact[k], "finite_difference": approx[k]}

    report = ProbeReport.from_margins(
        name or f"hessian/{spec.name}", sampler.seed, margins, witness
    )
    return log_report(report)
