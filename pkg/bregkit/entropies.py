"""Documented facts per entropy: strong-convexity parameters, relative gauges and Burg's r_x."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .catalog import BGS, HCT, AlphaBeta, Beta, Burg, Ell2Type, IteratedLog, L2Lp, Quadratic
from .combinators import DirectSumOf, PlusLinear, Scaled, SumOf, Translated
from .core import OUTSIDE, EntropyMetadata, EntropySpec, as_vector
from .errors import EmptyPair, NoDocumentedGauge, NoDocumentedParameter, NotInDomain, NotInZone
from .gauges import GaugeSpec
from .norms import NormSpec, equivalence_constants
from .sets import BallSet, PointSet, SetDescriptor, ShellSet

logger = logging.getLogger(__name__)

BURG_S1 = 4.0**8
BURG_T2_XTOL = 1e-6
CONJECTURED_ITERLOG_COEFFICIENT = 0.5


# ---------------------------------------------------------------------- #
# Result types
# ---------------------------------------------------------------------- #
@dataclass(frozen=True)
class PairDomainSpec:
    """The pair ``(S1, S2)`` a relative gauge is claimed on."""

    s1: SetDescriptor
    s2: SetDescriptor

    def describe(self) -> str:
        return f"S1={self.s1.describe()}; S2={self.s2.describe()}"


@dataclass(frozen=True)
class StrongConvexityCertificate:
    """A strong-convexity parameter ``mu`` of b on ``region``.

    ``provenance`` names the formula that produced ``mu`` so reports can cite it.
    """

    region: BallSet
    mu: float
    provenance: str

    def __post_init__(self) -> None:
        if not self.mu > 0:
            raise ValueError(f"Strong-convexity parameter must be positive, got {self.mu}")

    def scaled(self, factor: float) -> "StrongConvexityCertificate":
        """Same set with ``factor * mu``; factors above 1 give negative controls."""
        return replace(self, mu=self.mu * factor, provenance=f"{factor:g} x ({self.provenance})")

    def to_dict(self) -> Dict[str, object]:
        return {"set": self.region.describe(), "mu": self.mu, "provenance": self.provenance}


@dataclass(frozen=True)
class BurgRadius:
    """``r_x = max(t1, 2 t2, 2 |x|)`` together with its ingredients."""

    r_x: float
    t1: float
    t2: float
    gamma: float


# ---------------------------------------------------------------------- #
# Strong convexity
# ---------------------------------------------------------------------- #
def _hct_parameter(q: float, c2: float, c_inf: float, radius: float, floor: Optional[float]) -> Tuple[float, str]:
    if q == 2.0:
        return 2.0 * c2**2, "2 c2^2 (q=2)"
    if q > 2.0:
        if not floor:
            raise NoDocumentedParameter(
                f"HCT with q={q:g} > 2 is not strongly convex on the open orthant; pass a coordinate floor"
            )
        return q * c2**2 * floor ** (q - 2.0), "q c2^2 eps^(q-2)"
    if math.isinf(radius):
        raise NoDocumentedParameter(f"HCT with q={q:g} has no strong-convexity parameter on unbounded sets")
    return abs(q) * c2**2 / (c_inf * radius) ** (2.0 - q), "|q| c2^2 / (c_inf M)^(2-q)"


def _parameter(spec: EntropySpec, radius: float, floor: Optional[float]) -> Tuple[float, str]:
    constants = equivalence_constants(spec.norm)
    c2, c_inf = constants.c2, constants.c_inf

    if isinstance(spec, BGS):
        if math.isinf(radius):
            raise NoDocumentedParameter("BGS has no strong-convexity parameter on unbounded sets")
        return c2**2 / (c_inf * radius), "c2^2 / (c_inf M)"
    if isinstance(spec, HCT):
        mu, formula = _hct_parameter(spec.q, c2, c_inf, radius, floor)
        return mu, f"hct: {formula}"
    if isinstance(spec, Burg):
        if math.isinf(radius):
            raise NoDocumentedParameter("Burg has no strong-convexity parameter on unbounded sets")
        return c2**2 / (c_inf * radius) ** 2, "c2^2 / (c_inf M)^2"
    if isinstance(spec, IteratedLog):
        if math.isinf(radius):
            raise NoDocumentedParameter("iterlog has no strong-convexity parameter on unbounded sets")
        m = c_inf * radius
        if m <= 1.0:
            raise EmptyPair(f"No point of (1, inf)^n has norm <= {radius:g}")
        m_log_m = m * math.log(m)
        return c2**2 / m_log_m * (1.0 / m_log_m + 1.0 / m), "c2^2/(m log m) (1/(m log m) + 1/m), m = c_inf M"
    if isinstance(spec, Beta):
        if spec.beta == 1.0:
            mu, formula = _parameter(BGS(dim=spec.dim, norm=spec.norm), radius, floor)
        elif spec.beta == 0.0:
            mu, formula = _parameter(Burg(dim=spec.dim, norm=spec.norm), radius, floor)
        else:
            mu, formula = _hct_parameter(spec.beta, c2, c_inf, radius, floor)
            mu /= spec.beta
            formula = f"(1/beta) {formula}"
        return mu, f"beta: {formula}"
    if isinstance(spec, AlphaBeta):
        mu, formula = _hct_parameter(spec.beta, c2, c_inf, radius, floor)
        mu *= 1.0 - spec.beta
        formula = f"(1-beta) [{formula}]"
        if spec.alpha > 1.0 and (spec.alpha <= 2.0 or floor):
            extra, extra_formula = _hct_parameter(spec.alpha, c2, c_inf, radius, floor)
            mu += (spec.alpha - 1.0) * extra
            formula += f" + (alpha-1) [{extra_formula}]"
        return mu, f"alphabeta: {formula}"
    if isinstance(spec, L2Lp):
        kappa = 1.0 if spec.norm == NormSpec.lp(spec.p, spec.dim) else c2
        return (spec.p - 1.0) * kappa**2, "(p-1) kappa^2"
    if isinstance(spec, Quadratic):
        return spec.min_eigenvalue * c2**2, "lambda_min(A) c2^2"
    if isinstance(spec, Ell2Type):
        if spec.norm == NormSpec.mixed(2 * spec.n_split, spec.dim):
            if spec.n_split == 0:
                return 4.0, "ell2: 4"
            return 1.0 / spec.n_split, "ell2: 1/n_split"
        return 4.0 * c2**2, "ell2: 4 c2^2"

    if isinstance(spec, Scaled):
        mu, formula = _parameter(spec.inner, radius, floor)
        return spec.lam * mu, f"{spec.lam:g} x ({formula})"
    if isinstance(spec, PlusLinear):
        return _parameter(spec.inner, radius, floor)
    if isinstance(spec, Translated):
        shift = float(spec.norm.evaluate(spec.z0))
        mu, formula = _parameter(spec.inner, radius + shift, floor)
        return mu, f"{formula} at M + |z0|"
    if isinstance(spec, SumOf):
        total, parts = 0.0, []
        for weight, member in spec.members:
            try:
                mu, formula = _parameter(member, radius, floor)
            except NoDocumentedParameter:
                continue
            total += weight * mu
            parts.append(f"{weight:g} x ({formula})")
        if not parts:
            raise NoDocumentedParameter(f"No member of {spec.name} has a documented parameter")
        return total, " + ".join(parts)
    if isinstance(spec, DirectSumOf):
        mus = []
        for member in spec.members:
            block_radius = equivalence_constants(member.norm).gamma * c_inf * radius
            mus.append(_parameter(member, block_radius, floor)[0])
        return spec.c**2 * min(mus), f"c^2 min mu_i (c={spec.c:g})"
    raise NoDocumentedParameter(f"No documented strong-convexity parameter for {spec.name}")


def documented_strong_convexity(
    spec: EntropySpec, M_S: float, eps_floor: Optional[float] = None
) -> StrongConvexityCertificate:
    """Strong-convexity certificate of ``spec`` on ``{|w| <= M_S}`` within dom(b).

    With ``eps_floor`` the set is further cut to ``w_k >= lower_k + eps_floor``
    on every bounded coordinate.

    Raises:
        NoDocumentedParameter: where no parameter exists (HCT q > 2 without a
            floor; BGS, Burg and HCT q < 2 on unbounded sets).
        EmptyPair: if the set is empty.

    Example:
        >>> documented_strong_convexity(BGS(dim=2), 10.0).mu
        0.1
    """
    if not M_S > 0:
        raise ValueError(f"M_S must be positive, got {M_S}")
    if eps_floor is not None and not eps_floor > 0:
        raise ValueError(f"eps_floor must be positive, got {eps_floor}")
    mu, provenance = _parameter(spec, float(M_S), eps_floor)
    region = BallSet(spec.zone(), float(M_S), spec.norm, floor=eps_floor or 0.0)
    return StrongConvexityCertificate(region=region, mu=mu, provenance=provenance)


# ---------------------------------------------------------------------- #
# Burg's radius
# ---------------------------------------------------------------------- #
def burg_rx(x, norm: NormSpec) -> BurgRadius:
    """Radius beyond which ``0.25 log(1 + |x - y|)`` bounds the Itakura-Saito divergence.

    ``t1 = 4^8 * gamma * max x`` and ``t2`` is the crossing of
    ``0.5 log(t / (2 gamma |x|_inf)) - 4 = 0.25 log(1 + t)``, found by root
    bracketing to 1e-6 and then moved up so the strict inequality holds
    beyond it.

    Raises:
        NotInZone: if some coordinate of ``x`` is not positive.
    """
    x = as_vector(x, norm.dim)
    if np.any(x <= 0):
        raise NotInZone(f"burg_rx needs x in (0, inf)^n, got {x.tolist()}")
    gamma = equivalence_constants(norm).gamma
    x_max = float(np.max(x))
    t1 = BURG_S1 * gamma * x_max

    def excess(t: float) -> float:
        return 0.5 * math.log(t / (2.0 * gamma * x_max)) - 4.0 - 0.25 * math.log1p(t)

    if excess(1.0) > 0:
        t2 = 1.0
    else:
        hi = 1e30
        while excess(hi) <= 0:
            hi *= 1e10
        root = brentq(excess, 1.0, hi, xtol=BURG_T2_XTOL)
        t2 = float(np.nextafter(root + BURG_T2_XTOL, math.inf))
        while excess(t2) <= 0:
            t2 = float(np.nextafter(t2 + BURG_T2_XTOL, math.inf))
    r_x = max(t1, 2.0 * t2, 2.0 * float(norm.evaluate(x)))
    logger.debug(f"burg_rx: t1={t1:.6g} t2={t2:.6g} r_x={r_x:.6g}")
    return BurgRadius(r_x=r_x, t1=t1, t2=t2, gamma=gamma)


# ---------------------------------------------------------------------- #
# Relative gauges
# ---------------------------------------------------------------------- #
@dataclass(frozen=True)
class _GaugeClaim:
    gauge: GaugeSpec
    radius: float
    center: np.ndarray
    floor: float = 0.0
    reach: float = 1e3


def _hct_gauge(q: float, x: np.ndarray, norm: NormSpec, floor: Optional[float]) -> _GaugeClaim:
    constants = equivalence_constants(norm)
    c2, c_inf = constants.c2, constants.c_inf
    origin = np.zeros(x.shape[0])
    if q == 2.0:
        return _GaugeClaim(GaugeSpec.quadratic(2.0 * c2**2), 0.0, origin)
    if q > 2.0:
        if not floor:
            raise NoDocumentedGauge(f"HCT with q={q:g} > 2 has a gauge only on floored sets")
        if np.any(x < floor):
            raise NotInZone(f"x={x.tolist()} lies below the coordinate floor {floor:g}")
        return _GaugeClaim(GaugeSpec.quadratic(q * c2**2 * floor ** (q - 2.0)), 0.0, origin, floor)
    if q < 0 and np.any(x <= 0):
        raise NotInZone(f"HCT with q={q:g} needs x in (0, inf)^n, got {x.tolist()}")
    a = abs(q) * c2**2 / (c_inf ** (2.0 - q) * 2.0 ** (3.0 - q))
    return _GaugeClaim(GaugeSpec.power(a, q), 2.0 * float(norm.evaluate(x)), origin)


def _global_gauge(spec: EntropySpec) -> _GaugeClaim:
    mu, _ = _parameter(spec, math.inf, None)
    # far samples stay within a few probe radii so bounded-range formulas do not overflow
    return _GaugeClaim(GaugeSpec.quadratic(mu), 0.0, np.zeros(spec.dim), reach=2.0 * spec.probe_radius)


def _gauge(spec: EntropySpec, x: np.ndarray, floor: Optional[float], conjectured: bool) -> _GaugeClaim:
    constants = equivalence_constants(spec.norm)
    origin = np.zeros(spec.dim)
    twice_norm = 2.0 * float(spec.norm.evaluate(x))

    if isinstance(spec, BGS):
        return _GaugeClaim(GaugeSpec.linear(constants.c2**2 / (4.0 * constants.c_inf)), twice_norm, origin)
    if isinstance(spec, HCT):
        return _hct_gauge(spec.q, x, spec.norm, floor)
    if isinstance(spec, Burg):
        return _GaugeClaim(GaugeSpec.log(0.25), burg_rx(x, spec.norm).r_x, origin)
    if isinstance(spec, IteratedLog):
        if not conjectured:
            raise NoDocumentedGauge("iterlog has only a conjectured gauge; pass conjectured=True")
        return _GaugeClaim(GaugeSpec.iterated_log(CONJECTURED_ITERLOG_COEFFICIENT), twice_norm, origin)
    if isinstance(spec, Beta):
        if spec.beta == 1.0:
            return _gauge(BGS(dim=spec.dim, norm=spec.norm), x, floor, conjectured)
        if spec.beta == 0.0:
            return _gauge(Burg(dim=spec.dim, norm=spec.norm), x, floor, conjectured)
        claim = _hct_gauge(spec.beta, x, spec.norm, floor)
        return replace(claim, gauge=claim.gauge.scaled(1.0 / spec.beta))
    if isinstance(spec, AlphaBeta):
        claim = _hct_gauge(spec.beta, x, spec.norm, floor)
        return replace(claim, gauge=claim.gauge.scaled(1.0 - spec.beta))
    if isinstance(spec, (L2Lp, Quadratic, Ell2Type)):
        return _global_gauge(spec)

    if isinstance(spec, Scaled):
        claim = _gauge(spec.inner, x, floor, conjectured)
        return replace(claim, gauge=claim.gauge.scaled(spec.lam))
    if isinstance(spec, PlusLinear):
        return _gauge(spec.inner, x, floor, conjectured)
    if isinstance(spec, Translated):
        claim = _gauge(spec.inner, x + spec.z0, floor, conjectured)
        return replace(claim, center=claim.center - spec.z0)
    if isinstance(spec, SumOf):
        for weight, member in spec.members:
            try:
                claim = _gauge(member, x, floor, conjectured)
            except NoDocumentedGauge:
                continue
            return replace(claim, gauge=claim.gauge.scaled(weight))
        raise NoDocumentedGauge(f"No member of {spec.name} has a documented gauge")
    raise NoDocumentedGauge(f"No documented gauge for {spec.name}")


def documented_gauge(
    spec: EntropySpec, x, eps_floor: Optional[float] = None, conjectured: bool = False
) -> Tuple[GaugeSpec, PairDomainSpec]:
    """Relative gauge of ``spec`` at ``x`` and the pair ``({x}, S2)`` it holds on.

    Args:
        spec: Entropy to look up.
        x: Point of dom(b).
        eps_floor: Coordinate floor for HCT with ``q > 2``.
        conjectured: Allow the unproven iterated-log gauge.

    Returns:
        ``(psi, pair)`` with ``psi(|x - y|) <= B(x, y)`` claimed for every y in ``pair.s2``.

    Raises:
        NoDocumentedGauge: if no gauge is documented for the entropy here.
        NotInDomain: if ``x`` is outside dom(b).
        NotInZone: for Burg (or HCT q < 0) at a point with a nonpositive coordinate.
    """
    x = spec.vector(x)
    if spec.zone().status_codes(x) == OUTSIDE:
        raise NotInDomain(f"x={x.tolist()} is outside dom(b) of {spec.name}")
    claim = _gauge(spec, x, eps_floor, conjectured)
    s2 = ShellSet(
        spec.zone(), spec.norm, claim.radius, center=claim.center, floor=claim.floor, reach=claim.reach
    )
    return claim.gauge, PairDomainSpec(s1=PointSet(x), s2=s2)


def metadata(spec: EntropySpec) -> EntropyMetadata:
    return spec.metadata()
