"""Bregman functions, their divergences and numerical checks of what is claimed about them."""

from .catalog import (
    BGS,
    HCT,
    AlphaBeta,
    Beta,
    Burg,
    Ell2Type,
    IteratedLog,
    L2Lp,
    Quadratic,
    ell2_blocks,
    translated_iterated_log,
)
from .combinators import (
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
from .core import BOUNDARY, INTERIOR, OUTSIDE, DomainStatus, EntropyMetadata, EntropySpec, Zone
from .entropies import (
    PairDomainSpec,
    StrongConvexityCertificate,
    burg_rx,
    documented_gauge,
    documented_strong_convexity,
    metadata,
)
from .errors import (
    BregkitError,
    ConfigError,
    DimensionMismatch,
    Ell2Overflow,
    EmptyPair,
    GammaTooSmall,
    NoDocumentedGauge,
    NoDocumentedParameter,
    NonpositiveLambda,
    NotEssentiallySmooth,
    NotInDomain,
    NotInInterior,
    NotInZone,
    QOutOfRange,
    SegmentLeavesDomain,
    SemiEquivalenceViolated,
    SequenceLeavesZone,
    SOutOfRange,
)
from .gauges import GaugeFamily, GaugeSpec
from .norms import EquivalenceConstants, NormSpec, equivalence_constants, sample_unit_sphere
from .sets import BallSet, BoxSet, PointSet, SetDescriptor, ShellSet

__version__ = "0.1.0"

__all__ = [
    "EntropySpec",
    "EntropyMetadata",
    "Zone",
    "DomainStatus",
    "INTERIOR",
    "BOUNDARY",
    "OUTSIDE",
    "NormSpec",
    "EquivalenceConstants",
    "equivalence_constants",
    "sample_unit_sphere",
    "BGS",
    "HCT",
    "Burg",
    "IteratedLog",
    "Beta",
    "AlphaBeta",
    "L2Lp",
    "Quadratic",
    "Ell2Type",
    "ell2_blocks",
    "translated_iterated_log",
    "Scaled",
    "PlusLinear",
    "Translated",
    "SumOf",
    "DirectSumOf",
    "scale_plus_linear",
    "translate",
    "weighted_sum",
    "direct_sum",
    "PairDomainSpec",
    "StrongConvexityCertificate",
    "documented_strong_convexity",
    "documented_gauge",
    "burg_rx",
    "metadata",
    "GaugeSpec",
    "GaugeFamily",
    "SetDescriptor",
    "PointSet",
    "BoxSet",
    "BallSet",
    "ShellSet",
    "BregkitError",
    "ConfigError",
    "DimensionMismatch",
    "NotInInterior",
    "NotInDomain",
    "NotInZone",
    "NonpositiveLambda",
    "SemiEquivalenceViolated",
    "Ell2Overflow",
    "NoDocumentedParameter",
    "NoDocumentedGauge",
    "EmptyPair",
    "SegmentLeavesDomain",
    "SOutOfRange",
    "QOutOfRange",
    "GammaTooSmall",
    "SequenceLeavesZone",
    "NotEssentiallySmooth",
    "__version__",
]
