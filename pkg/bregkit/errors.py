"""Exception hierarchy for bregkit."""

from __future__ import annotations

from typing import Optional


class BregkitError(ValueError):
    """Base class for every error raised on invalid bregkit input."""


class DimensionMismatch(BregkitError):
    """A vector length does not match the declared dimension."""


class NotInInterior(BregkitError):
    """A point outside the zone was passed where differentiability is needed."""


class NotInDomain(BregkitError):
    """A point outside the effective domain was passed where b must be finite."""


class NotInZone(BregkitError):
    """A construction requires a point of the zone and got something else."""


class NonpositiveLambda(BregkitError):
    """Scaling factors of entropy combinations must be positive."""


class SemiEquivalenceViolated(BregkitError):
    """The block norm does not dominate c times the total norm."""


class Ell2Overflow(BregkitError, OverflowError):
    """An exponent of the l2-type entropy exceeds the float range."""


class NoDocumentedParameter(BregkitError):
    """No strong-convexity parameter is known for the entropy on this set."""


class NoDocumentedGauge(BregkitError):
    """No relative gauge is known for the entropy at this point."""


class EmptyPair(BregkitError):
    """A set descriptor (or pair of them) admits no points."""


class SegmentLeavesDomain(BregkitError):
    """The segment between two points is not contained in the domain."""


class SOutOfRange(BregkitError):
    """A witness parameter is outside its admissible range."""


class QOutOfRange(BregkitError):
    """The entropy index is outside the range a construction supports."""


class GammaTooSmall(BregkitError):
    """The level-set height is below the admissibility threshold."""


class SequenceLeavesZone(BregkitError):
    """A probe sequence y + v/i left the zone."""


class NotEssentiallySmooth(BregkitError):
    """The entropy is not essentially smooth, so no blow-up is expected."""


class ConfigError(BregkitError):
    """Invalid run configuration, located by file position or field path."""

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        self.location = location
        self.detail = message
        super().__init__(f"{location}: {message}" if location else message)
