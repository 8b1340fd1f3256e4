"""Probe reports, modulus tables and their JSON/CSV renderings."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

REPORT_FIELDS = ("probe", "seed", "samples", "violations", "worst_margin", "witness", "pass")
MODULUS_FIELDS = ("t_center", "t_width", "psi_hat", "n_samples")


def format_number(value: float) -> str:
    """17 significant digits; non-finite values as ``inf``, ``-inf`` or ``nan``."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value, ".17g")


def jsonable(obj):
    """Convert numpy values and non-finite floats into JSON-safe Python objects."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else format_number(value)
    return obj


@dataclass
class ProbeReport:
    """Outcome of one probe run.

    ``worst_margin`` is the smallest slack observed (allowed minus observed,
    after tolerance); it is negative exactly when some sample violated the
    claim. ``witness`` holds the inputs of the worst violation.
    """

    probe: str
    seed: int
    samples: int
    violations: int
    worst_margin: float
    witness: Optional[Dict[str, object]] = None
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @classmethod
    def from_margins(
        cls,
        probe: str,
        seed: int,
        margins: Sequence[float],
        witness: Callable[[int], Dict[str, object]],
        violated: Optional[np.ndarray] = None,
        details: Optional[Dict[str, object]] = None,
    ) -> "ProbeReport":
        """Summarize per-sample margins; ``violated`` defaults to ``margins < 0``."""
        margins = np.asarray(margins, dtype=float)
        if violated is None:
            violated = margins < 0
        count = int(np.count_nonzero(violated))
        if margins.size == 0:
            return cls(probe, seed, 0, 0, math.inf, None, details or {})
        worst = int(np.argmin(np.where(np.isnan(margins), -math.inf, margins)))
        return cls(
            probe=probe,
            seed=seed,
            samples=int(margins.size),
            violations=count,
            worst_margin=float(margins[worst]),
            witness=witness(worst) if count else None,
            details=details or {},
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "probe": self.probe,
            "seed": self.seed,
            "samples": self.samples,
            "violations": self.violations,
            "worst_margin": jsonable(self.worst_margin),
            "witness": jsonable(self.witness),
            "pass": self.passed,
        }

    def to_row(self) -> List[str]:
        witness = "" if self.witness is None else json.dumps(jsonable(self.witness), separators=(",", ":"))
        return [
            self.probe,
            str(self.seed),
            str(self.samples),
            str(self.violations),
            format_number(self.worst_margin),
            witness,
            "true" if self.passed else "false",
        ]


def log_report(report: ProbeReport) -> ProbeReport:
    """Log one INFO line per finished probe and hand the report back."""
    logger.info(
        f"{report.probe}: {report.samples} samples, {report.violations} violations, "
        f"worst margin {format_number(report.worst_margin)}"
    )
    return report


def sort_reports(reports: Iterable[ProbeReport]) -> List[ProbeReport]:
    return sorted(reports, key=lambda report: report.probe)


def render_json(reports: Iterable[ProbeReport]) -> str:
    return json.dumps([report.to_json() for report in sort_reports(reports)], indent=2)


def render_csv(reports: Iterable[ProbeReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_FIELDS)
    for report in sort_reports(reports):
        writer.writerow(report.to_row())
    return buffer.getvalue()


def render_reports(reports: Iterable[ProbeReport], fmt: str = "json") -> str:
    if fmt == "json":
        return render_json(reports)
    if fmt == "csv":
        return render_csv(reports)
    raise ValueError(f"Unknown report format: {fmt}")


def render_markdown(reports: Iterable[ProbeReport]) -> str:
    lines = [
        "| probe | samples | violations | worst margin | pass |",
        "|---|---:|---:|---:|:---:|",
    ]
    for report in sort_reports(reports):
        lines.append(
            f"| `{report.probe}` | {report.samples} | {report.violations} | "
            f"{format_number(report.worst_margin)} | {'yes' if report.passed else 'NO'} |"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- #
# Modulus tables
# ---------------------------------------------------------------------- #
@dataclass(frozen=True)
class ModulusBucket:
    t_center: float
    t_width: float
    psi_hat: float
    n_samples: int


@dataclass
class ModulusTable:
    """Bucketed estimate of the modulus of uniform convexity on a pair of sets.

    ``distances`` and ``values`` keep every sampled ``(|x - y|, min gap /
    (lambda (1 - lambda)))`` so the upper-bound property can be rechecked.
    """

    buckets: List[ModulusBucket]
    pair: str
    edges: np.ndarray
    seed: int = 0
    distances: np.ndarray = field(default_factory=lambda: np.zeros(0))
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def bucket_index(self, t) -> np.ndarray:
        """Bucket of each distance; buckets are ``(edges[i], edges[i+1]]``."""
        return np.searchsorted(self.edges, np.asarray(t, dtype=float), side="left") - 1

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(MODULUS_FIELDS)
        for bucket in self.buckets:
            writer.writerow(
                [
                    format_number(bucket.t_center),
                    format_number(bucket.t_width),
                    format_number(bucket.psi_hat),
                    bucket.n_samples,
                ]
            )
        return buffer.getvalue()
