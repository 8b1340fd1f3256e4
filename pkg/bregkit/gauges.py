"""Closed-form gauge families psi used as lower bounds for divergences."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict

import numpy as np

from .errors import NoDocumentedGauge


class GaugeFamily(str, Enum):
    LINEAR = "linear"
    POWER = "power"
    QUADRATIC = "quadratic"
    LOG = "log"
    ITERATED_LOG = "iterated_log"


@dataclass(frozen=True)
class GaugeSpec:
    """A gauge ``psi: [0, inf) -> [0, inf)`` with ``psi(0) = 0``.

    ``coefficient`` is ``a`` in ``a t``, ``a t^e``, ``a log(1 + t)`` and
    ``a log(1 + log(1 + t))``, and ``mu`` in ``mu t^2 / 2``. Power gauges with
    a negative exponent are lower bounds that decay in t; they are accepted by
    the gauge check but have no inverse.

    Example:
        >>> psi = GaugeSpec.log(0.25)
        >>> float(psi.inverse(psi(3.0)))
        3.0
    """

    family: GaugeFamily
    coefficient: float
    exponent: float = 1.0
    conjectured: bool = False

    def __post_init__(self) -> None:
        if not self.coefficient > 0:
            raise ValueError(f"Gauge coefficient must be positive, got {self.coefficient}")
        if self.family is GaugeFamily.POWER and self.exponent == 0:
            raise ValueError("Power gauge exponent must be nonzero")

    @classmethod
    def linear(cls, a: float) -> "GaugeSpec":
        return cls(GaugeFamily.LINEAR, float(a))

    @classmethod
    def power(cls, a: float, exponent: float) -> "GaugeSpec":
        return cls(GaugeFamily.POWER, float(a), float(exponent))

    @classmethod
    def quadratic(cls, mu: float) -> "GaugeSpec":
        return cls(GaugeFamily.QUADRATIC, float(mu), 2.0)

    @classmethod
    def log(cls, a: float = 0.25) -> "GaugeSpec":
        return cls(GaugeFamily.LOG, float(a))

    @classmethod
    def iterated_log(cls, a: float = 0.5) -> "GaugeSpec":
        return cls(GaugeFamily.ITERATED_LOG, float(a), conjectured=True)

    @property
    def increasing(self) -> bool:
        return not (self.family is GaugeFamily.POWER and self.exponent < 0)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a = self.coefficient
        if self.family is GaugeFamily.LINEAR:
            out = a * t
        elif self.family is GaugeFamily.POWER:
            with np.errstate(divide="ignore"):
                out = np.where(t > 0, a * np.abs(t) ** self.exponent, 0.0)
        elif self.family is GaugeFamily.QUADRATIC:
            out = 0.5 * a * t**2
        elif self.family is GaugeFamily.LOG:
            out = a * np.log1p(t)
        else:
            out = a * np.log1p(np.log1p(t))
        return float(out) if out.ndim == 0 else out

    def inverse(self, s):
        """``psi^-1``; only increasing gauges are invertible."""
        if not self.increasing:
            raise NoDocumentedGauge(f"{self.describe()} decreases in t and has no inverse")
        s = np.asarray(s, dtype=float)
        if np.any(s < 0):
            raise ValueError("Gauge inverse is defined on [0, inf)")
        a = self.coefficient
        if self.family is GaugeFamily.LINEAR:
            out = s / a
        elif self.family is GaugeFamily.POWER:
            out = (s / a) ** (1.0 / self.exponent)
        elif self.family is GaugeFamily.QUADRATIC:
            out = np.sqrt(2.0 * s / a)
        elif self.family is GaugeFamily.LOG:
            out = np.expm1(s / a)
        else:
            out = np.expm1(np.expm1(s / a))
        return float(out) if out.ndim == 0 else out

    def scaled(self, factor: float) -> "GaugeSpec":
        """``factor * psi``; used to propagate gauges through combinations."""
        return replace(self, coefficient=self.coefficient * factor)

    def describe(self) -> str:
        a = f"{self.coefficient:.6g}"
        if self.family is GaugeFamily.LINEAR:
            text = f"{a}*t"
        elif self.family is GaugeFamily.POWER:
            text = f"{a}*t^{self.exponent:g}"
        elif self.family is GaugeFamily.QUADRATIC:
            text = f"0.5*{a}*t^2"
        elif self.family is GaugeFamily.LOG:
            text = f"{a}*log(1+t)"
        else:
            text = f"{a}*log(1+log(1+t))"
        return text + (" [conjectured]" if self.conjectured else "")

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": self.family.value,
            "coefficient": self.coefficient,
            "exponent": self.exponent,
            "conjectured": self.conjectured,
        }
