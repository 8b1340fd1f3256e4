"""Named probe suites run over a list of entropies."""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..catalog import HCT, Quadratic
from ..combinators import (
    DirectSumOf,
    PlusLinear,
    Scaled,
    SumOf,
    Translated,
    direct_sum,
    scale_plus_linear,
    translate,
    weighted_sum,
)
from ..core import EntropySpec
from ..entropies import (
    PairDomainSpec,
    StrongConvexityCertificate,
    documented_gauge,
    documented_strong_convexity,
)
from ..errors import (
    EmptyPair,
    NoDocumentedGauge,
    NoDocumentedParameter,
    NotInDomain,
    NotInInterior,
    NotInZone,
)
from ..norms import NormSpec, equivalence_constants
from . import certificates, derivatives, identities, levelsets, sequences
from .convexity import (
    modulus_buckets,
    modulus_estimate,
    modulus_lower_bound_check,
    modulus_scaling_check,
)
from .reports import ProbeReport, log_report
from .sampling import Sampler, probe_points
from .witnesses import (
    WitnessKind,
    hct_negq_levelset_witness,
    sc_failure_witness,
    uc_failure_witness,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCES: Dict[str, float] = {
    "oracle": identities.ORACLE_TOLERANCE,
    "nonnegativity": identities.NONNEGATIVITY_TOLERANCE,
    "three_point": identities.THREE_POINT_TOLERANCE,
    "convexity": identities.CONVEXITY_TOLERANCE,
    "gradient": derivatives.GRADIENT_TOLERANCE,
    "hessian": derivatives.HESSIAN_TOLERANCE,
    "strong_convexity": certificates.STRONG_CONVEXITY_TOLERANCE,
    "gauge": certificates.GAUGE_TOLERANCE,
    "sequential": certificates.SEQUENTIAL_TOLERANCE,
    "levelset": levelsets.LEVELSET_TOLERANCE,
    "limiting": sequences.LIMITING_TOLERANCE,
    "witness": 1e-9,
    "combinators": 1e-12,
    "modulus": 0.1,
}

SC_FLOOR = 0.1
GAUGE_POINTS = (1.0, 0.1)
LEVELSET_GAMMAS = (0.1, 1.0, 10.0)
LIMITING_CONFIGS = 10
LIMITING_STEP = (1e-5, 1e-4)
SCALE_FACTOR = 3.0
SUM_WEIGHTS = (0.7, 1.3)
SUM_TOLERANCE = 1e-10
SC_WITNESS_RELATIVE = 1e-6


@dataclass
class SuiteSettings:
    """Seed, sample count, tolerance overrides and the corrupted-mu factor of a run."""

    seed: int = 42
    samples: int = 10_000
    tolerances: Dict[str, float] = field(default_factory=dict)
    mu_factor: float = 1.0
    dims: Tuple[int, ...] = (1, 2, 5)

    def __post_init__(self) -> None:
        unknown = set(self.tolerances) - set(DEFAULT_TOLERANCES)
        if unknown:
            raise ValueError(f"Unknown tolerance names: {sorted(unknown)}")
        if not self.mu_factor > 0:
            raise ValueError(f"mu_factor must be positive, got {self.mu_factor}")

    def tolerance(self, key: str) -> float:
        return self.tolerances.get(key, DEFAULT_TOLERANCES[key])

    def sampler(self, count: Optional[int] = None) -> Sampler:
        return Sampler(self.seed, count or self.samples)


def label(spec: EntropySpec) -> str:
    return f"{spec.name}[n={spec.dim},{spec.norm.label}]"


def with_norm(spec: EntropySpec, norm: NormSpec) -> EntropySpec:
    """The same entropy measured in another ambient norm."""
    if isinstance(spec, (Scaled, PlusLinear, Translated)):
        return dataclasses.replace(spec, inner=with_norm(spec.inner, norm))
    if isinstance(spec, SumOf):
        return dataclasses.replace(
            spec, members=tuple((w, with_norm(member, norm)) for w, member in spec.members)
        )
    if isinstance(spec, DirectSumOf):
        raise ValueError("Direct sums fix their block norms; build a new one instead")
    return dataclasses.replace(spec, norm=norm)


def _skip(suite: str, spec: EntropySpec, exc: Exception) -> None:
    logger.warning(f"{suite}: skipping {label(spec)}: {exc}")


def _certificate(spec: EntropySpec, settings: SuiteSettings) -> StrongConvexityCertificate:
    """Documented certificate on a ball around the zone anchor, floored when needed."""
    zone = spec.zone()
    try:
        radius = float(spec.norm.evaluate(zone.anchor())) + spec.probe_radius
        cert = documented_strong_convexity(spec, radius)
    except NoDocumentedParameter:
        radius = float(spec.norm.evaluate(zone.anchor(SC_FLOOR))) + spec.probe_radius
        cert = documented_strong_convexity(spec, radius, eps_floor=SC_FLOOR)
    return cert if settings.mu_factor == 1.0 else cert.scaled(settings.mu_factor)


# ---------------------------------------------------------------------- #
# Per-entropy suites
# ---------------------------------------------------------------------- #
def oracle_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    return [
        identities.oracle_agreement_probe(
            spec, settings.sampler(), settings.tolerance("oracle"), f"oracle/{label(spec)}"
        )
    ]


def nonnegativity_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    return [
        identities.nonnegativity_probe(
            spec, settings.sampler(), settings.tolerance("nonnegativity"), f"nonnegativity/{label(spec)}"
        )
    ]


def gradient_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    sampler = settings.sampler()
    return [
        derivatives.gradient_check(
            spec, sampler, settings.tolerance("gradient"), name=f"gradient/{label(spec)}/grad"
        ),
        derivatives.hessian_check(
            spec, sampler, settings.tolerance("hessian"), name=f"gradient/{label(spec)}/hessian"
        ),
    ]


def three_point_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    return [
        identities.three_point_probe(
            spec, settings.sampler(), settings.tolerance("three_point"), f"three_point/{label(spec)}"
        )
    ]


def convexity_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    return [
        identities.convexity_gap_probe(
            spec, settings.sampler(), settings.tolerance("convexity"), f"convexity/{label(spec)}"
        )
    ]


def strong_convexity_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """Certificates under the entropy's own norm and under l1."""
    variants = [spec]
    l1 = NormSpec.lp(1, spec.dim)
    if spec.norm != l1:
        try:
            variants.append(with_norm(spec, l1))
        except ValueError as exc:
            _skip("strong_convexity", spec, exc)
    reports = []
    for variant in variants:
        try:
            cert = _certificate(variant, settings)
        except (NoDocumentedParameter, EmptyPair) as exc:
            _skip("strong_convexity", variant, exc)
            continue
        reports.append(
            certificates.strong_convexity_check(
                variant,
                cert,
                settings.sampler(),
                settings.tolerance("strong_convexity"),
                f"strong_convexity/{label(variant)}",
            )
        )
    return reports


def sequential_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    try:
        cert = _certificate(spec, settings)
    except (NoDocumentedParameter, EmptyPair) as exc:
        _skip("sequential", spec, exc)
        return []
    return [
        certificates.sequential_consistency_probe(
            spec, cert, settings.sampler(), settings.tolerance("sequential"), f"sequential/{label(spec)}"
        )
    ]


def gauge_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """Documented gauges at ``x = (1, ..., 1)`` and ``x = (0.1, ..., 0.1)``."""
    reports = []
    for level in GAUGE_POINTS:
        x = np.full(spec.dim, level)
        try:
            try:
                gauge, pair = documented_gauge(spec, x)
            except NoDocumentedGauge:
                gauge, pair = documented_gauge(spec, x, eps_floor=SC_FLOOR)
        except (NoDocumentedGauge, NotInDomain, NotInZone) as exc:
            _skip("gauge", spec, exc)
            continue
        reports.append(
            certificates.gauge_check(
                spec,
                gauge,
                pair,
                settings.sampler(),
                settings.tolerance("gauge"),
                f"gauge/{label(spec)}/x={level:g}",
            )
        )
    return reports


def levelset_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    reports = []
    x = np.ones(spec.dim)
    for gamma in LEVELSET_GAMMAS:
        try:
            report = levelsets.levelset_probe(
                spec,
                x,
                gamma,
                settings.sampler(),
                tolerance=settings.tolerance("levelset"),
                name=f"levelset/{label(spec)}/gamma={gamma:g}",
            )
        except (NoDocumentedGauge, NotInInterior, NotInDomain, NotInZone) as exc:
            _skip("levelset", spec, exc)
            break
        reports.append(report)
    return reports


def limiting_configs(spec: EntropySpec, rng: np.random.Generator, count: int):
    """Random ``(x, y, v)`` with ``v`` pointing from ``y`` towards ``x``, ``|v|_2`` in ``LIMITING_STEP``."""
    zone = spec.zone()
    finite = np.isfinite(zone.lower)
    base = np.where(finite, zone.lower, 0.0)
    spread = min(1.0, spec.probe_radius / 4.0)
    for _ in range(count):
        pair = []
        for _ in range(2):
            offsets = rng.uniform(1.0, 2.0, spec.dim)
            signs = rng.choice([-1.0, 1.0], spec.dim)
            pair.append(np.where(finite, base + offsets, signs * offsets * spread))
        x, y = pair
        length = rng.uniform(*LIMITING_STEP)
        yield x, y, length * (x - y) / np.linalg.norm(x - y)


def limiting_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    rng = settings.sampler().generator()
    return [
        sequences.limiting_difference_probe(
            spec,
            x,
            y,
            v,
            tolerance=settings.tolerance("limiting"),
            seed=settings.seed,
            name=f"limiting/{label(spec)}/{k}",
        )
        for k, (x, y, v) in enumerate(limiting_configs(spec, rng, LIMITING_CONFIGS))
    ]


def blowup_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """Walk towards ``p = (lower_1, lower_2 + 1, ...)`` along the first axis."""
    zone = spec.zone()
    if zone.is_whole or not np.isfinite(zone.lower[0]):
        logger.info(f"blowup: {label(spec)} has no boundary to approach")
        return []
    if not spec.essentially_smooth:
        logger.info(f"blowup: {label(spec)} is not essentially smooth")
        return []
    p = zone.anchor(1.0)
    p[0] = zone.lower[0]
    v = np.zeros(spec.dim)
    v[0] = 1.0
    return [
        sequences.boundary_blowup_probe(spec, p, v, seed=settings.seed, name=f"blowup/{label(spec)}")
    ]


def modulus_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """Estimated modulus on the certificate ball: the certified lower bound and the scaling diagnostic."""
    try:
        cert = _certificate(spec, settings)
    except (NoDocumentedParameter, EmptyPair) as exc:
        _skip("modulus", spec, exc)
        return []
    region = cert.region
    pair = PairDomainSpec(region, region)
    edges = modulus_buckets(0.01 * region.radius, 2.0 * region.radius)
    table = modulus_estimate(spec, pair, edges, settings.sampler(max(settings.samples, 1_000)))
    bound = modulus_lower_bound_check(
        table,
        cert.mu,
        tolerance=settings.tolerance("strong_convexity"),
        name=f"modulus/{label(spec)}/lower_bound",
    )
    scaling = modulus_scaling_check(
        table, slack=settings.tolerance("modulus"), name=f"modulus/{label(spec)}/scaling"
    )
    return [log_report(bound), log_report(scaling)]


# ---------------------------------------------------------------------- #
# Combinator identities
# ---------------------------------------------------------------------- #
def _relative_margins(actual: np.ndarray, expected: np.ndarray, tolerance: float) -> np.ndarray:
    return tolerance * np.maximum(1.0, np.abs(expected)) - np.abs(actual - expected)


def combinators_suite(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """Scaling plus linear terms, translation, weighted sums and direct sums."""
    tag = label(spec)
    rng = settings.sampler().generator()
    count = settings.samples
    xs = probe_points(spec, rng, count, identities.ORACLE_MARGIN)
    ys = probe_points(spec, rng, count, identities.ORACLE_MARGIN)
    base = spec.divergences(xs, ys)
    reports = []

    scaled = scale_plus_linear(spec, SCALE_FACTOR, rng.standard_normal(spec.dim))
    got = scaled.divergences(xs, ys)
    reports.append(
        ProbeReport.from_margins(
            f"combinators/{tag}/scale",
            settings.seed,
            _relative_margins(got, SCALE_FACTOR * base, settings.tolerance("combinators")),
            lambda k: {"x": xs[k], "y": ys[k], "scaled": got[k], "B": base[k]},
        )
    )

    z0 = rng.uniform(-0.5, 0.5, spec.dim)
    shifted = translate(spec, z0)
    moved = shifted.divergences(xs - z0, ys - z0)
    direct = spec.divergences((xs - z0) + z0, (ys - z0) + z0)
    differs = moved != direct
    reports.append(
        ProbeReport.from_margins(
            f"combinators/{tag}/translate",
            settings.seed,
            np.where(differs, -np.abs(moved - direct), 0.0),
            lambda k: {"x": xs[k] - z0, "y": ys[k] - z0, "z0": z0, "translated": moved[k], "B": direct[k]},
            violated=differs,
        )
    )

    w1, w2 = SUM_WEIGHTS
    quadratic = Quadratic.identity(spec.dim, norm=spec.norm)
    summed = weighted_sum([(w1, spec), (w2, quadratic)])
    got_sum = summed.divergences(xs, ys)
    expected = w1 * base + w2 * quadratic.divergences(xs, ys)
    reports.append(
        ProbeReport.from_margins(
            f"combinators/{tag}/sum",
            settings.seed,
            _relative_margins(got_sum, expected, SUM_TOLERANCE),
            lambda k: {"x": xs[k], "y": ys[k], "sum": got_sum[k], "expected": expected[k]},
        )
    )

    return [log_report(report) for report in reports] + _direct_sum_reports(spec, settings)


def _direct_sum_reports(spec: EntropySpec, settings: SuiteSettings) -> List[ProbeReport]:
    """``spec + spec`` on the product space with the Euclidean total norm."""
    if spec.norm == NormSpec.euclidean(spec.dim):
        c = 1.0
    else:
        c = 1.0 / (equivalence_constants(spec.norm).c_inf * math.sqrt(spec.dim))
    product = direct_sum([spec, spec], c, NormSpec.euclidean(2 * spec.dim))
    try:
        cert = _certificate(product, settings)
    except (NoDocumentedParameter, EmptyPair) as exc:
        _skip("combinators", product, exc)
        return []
    return [
        certificates.strong_convexity_check(
            product,
            cert,
            settings.sampler(),
            settings.tolerance("strong_convexity"),
            f"combinators/{label(spec)}/direct_sum",
        )
    ]


# ---------------------------------------------------------------------- #
# Witnesses (independent of the entropy list)
# ---------------------------------------------------------------------- #
UC_EXPONENTS = range(1, 7)
GENERIC_AGREEMENT_MAX_S = 100.0


def _uc_reports(settings: SuiteSettings, dim: int) -> List[ProbeReport]:
    tolerance = settings.tolerance("witness")
    reports = []
    for kind in WitnessKind:
        witnesses = [uc_failure_witness(kind, 10.0**k, dim) for k in UC_EXPONENTS]
        expected = np.array([w.b_expected for w in witnesses])
        closed = np.array([w.spec.divergence_closed(w.x, w.y) for w in witnesses])
        checks = [("closed", m) for m in _relative_margins(closed, expected, tolerance)]
        for w in witnesses:
            if w.s <= GENERIC_AGREEMENT_MAX_S:
                generic = w.spec.divergence_generic(w.x, w.y)
                checks.append(
                    ("generic", tolerance * max(1.0, abs(w.b_expected)) - abs(generic - w.b_expected))
                )
        if kind is WitnessKind.BGS:
            s = np.array([w.s for w in witnesses])
            checks.extend(("rate", m) for m in np.minimum(expected - 0.25 / s, 1.0 / s - expected))
            checks.extend(("distance", 1e-12 - abs(w.distance - 1.0)) for w in witnesses)
        elif kind is WitnessKind.HCT_HALF:
            checks.extend(("distance", 1e-12 - abs(w.distance / math.sqrt(w.s) - 1.0)) for w in witnesses)
            checks.extend(("decreasing", m) for m in -np.diff(expected))
        else:
            checks.extend(("decreasing", m) for m in -np.diff(expected))
            checks.append(("small", 1e-5 - expected[-1]))
        names = [check for check, _ in checks]
        margins = np.array([m for _, m in checks], dtype=float)
        strict = np.array([check == "decreasing" for check in names])
        reports.append(
            ProbeReport.from_margins(
                f"witness/uc/{kind.value}[n={dim}]",
                settings.seed,
                margins,
                lambda k: {"kind": kind.value, "check": names[k], "margin": margins[k]},
                violated=np.where(strict, margins <= 0, margins < 0),
            )
        )
    return reports


def _sc_reports(settings: SuiteSettings) -> List[ProbeReport]:
    eps = [10.0**-k for k in range(1, 6)]
    cubic = [sc_failure_witness(3.0, e) for e in eps]
    ratios = np.array([w.ratio for w in cubic])
    expected = np.array([w.ratio_expected for w in cubic])
    margins = list(SC_WITNESS_RELATIVE * np.abs(expected) - np.abs(ratios - expected))
    margins.append(1e-4 - ratios[-1])
    near = sc_failure_witness(1.5, 1e2).ratio
    far = sc_failure_witness(1.5, 1e6).ratio
    margins.append(0.011 * near - far)
    margins = np.asarray(margins)
    return [
        ProbeReport.from_margins(
            "witness/sc/hct",
            settings.seed,
            margins,
            lambda k: {"index": k, "margin": margins[k], "ratios_q3": ratios, "ratio_q1.5": [near, far]},
        )
    ]


def _negq_reports(settings: SuiteSettings, dim: int) -> List[ProbeReport]:
    x = np.ones(dim)
    gamma = float(dim)
    t0 = hct_negq_levelset_witness(-1.0, x, gamma)
    spec = HCT(q=-1.0, dim=dim)
    rng = settings.sampler().generator()
    ys = np.exp(rng.uniform(math.log(t0) + 1e-9, math.log(1e6), (settings.samples, dim)))
    ys = np.vstack([ys, np.full(dim, 1e6)])
    values = spec.divergences(x[None, :], ys)
    margins = gamma - values

    def witness(k: int):
        return {"t0": t0, "y": ys[k], "B": values[k], "gamma": gamma}

    return [
        ProbeReport.from_margins(
            f"witness/negq_levelset[n={dim}]", settings.seed, margins, witness, details={"t0": t0}
        )
    ]


def witness_suite(settings: SuiteSettings) -> List[ProbeReport]:
    reports = []
    for dim in settings.dims:
        reports.extend(_uc_reports(settings, dim))
        reports.extend(_negq_reports(settings, dim))
    reports.extend(_sc_reports(settings))
    return [log_report(report) for report in reports]


# ---------------------------------------------------------------------- #
# Registry
# ---------------------------------------------------------------------- #
PerEntropySuite = Callable[[EntropySpec, SuiteSettings], List[ProbeReport]]

ENTROPY_SUITES: Dict[str, PerEntropySuite] = {
    "oracle": oracle_suite,
    "nonnegativity": nonnegativity_suite,
    "gradient": gradient_suite,
    "three_point": three_point_suite,
    "convexity": convexity_suite,
    "strong_convexity": strong_convexity_suite,
    "gauge": gauge_suite,
    "levelset": levelset_suite,
    "limiting": limiting_suite,
    "blowup": blowup_suite,
    "sequential": sequential_suite,
    "combinators": combinators_suite,
    "modulus": modulus_suite,
}
SUITE_NAMES: Tuple[str, ...] = tuple(ENTROPY_SUITES) + ("witness", "all")
ALL_EXCLUDES = ("modulus",)


def expand_suite(name: str) -> List[str]:
    if name == "all":
        return [s for s in SUITE_NAMES if s not in ALL_EXCLUDES and s != "all"]
    if name not in SUITE_NAMES:
        raise ValueError(f"Unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    return [name]


def run_suite(
    name: str, specs: Iterable[EntropySpec], settings: Optional[SuiteSettings] = None
) -> List[ProbeReport]:
    """Run a suite (or ``all``) and return its reports, ordered by probe name.

    Example:
        >>> reports = run_suite("oracle", [BGS(dim=2)], SuiteSettings(samples=100))
        >>> reports[0].probe, reports[0].passed
        ('oracle/bgs[n=2,lp:2]', True)
    """
    settings = settings or SuiteSettings()
    specs = list(specs)
    reports: List[ProbeReport] = []
    for suite in expand_suite(name):
        if suite == "witness":
            reports.extend(witness_suite(settings))
            continue
        for spec in specs:
            reports.extend(ENTROPY_SUITES[suite](spec, settings))
    return sorted(reports, key=lambda report: report.probe)


def failed(reports: Sequence[ProbeReport]) -> List[ProbeReport]:
    return [report for report in reports if not report.passed]
