"""Run configuration: JSON files, environment defaults and the entropy registry."""

from __future__ import annotations

import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .analysis.sampling import MAX_SEED
from .analysis.suites import DEFAULT_TOLERANCES, SUITE_NAMES, SuiteSettings
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
from .combinators import scale_plus_linear, translate
from .core import EntropySpec
from .errors import ConfigError
from .norms import NormSpec

logger = logging.getLogger(__name__)

SEED_ENV = "BREGKIT_SEED"
DEFAULT_SEED = 42
ACCEPTANCE_DIMS = (1, 2, 5)

ENTROPY_NAMES = (
    "bgs",
    "hct",
    "burg",
    "iterlog",
    "iterlog-shifted",
    "beta",
    "alphabeta",
    "l2lp",
    "quadratic",
    "ell2",
    "ell2-blocks",
    "all",
)
WITNESS_KINDS = ("bgs-uc", "burg-uc", "iterlog-uc", "hct-half-uc", "hct-sc", "hct-negq")
REPORT_FORMATS = ("json", "csv")


def parse_vector(text: str) -> List[float]:
    """``"1,2.5,-3"`` -> ``[1.0, 2.5, -3.0]``."""
    parts = [part.strip() for part in str(text).split(",")]
    try:
        values = [float(part) for part in parts]
    except ValueError as exc:
        raise ValueError(f"expected comma-separated decimals, got {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"vector entries must be finite, got {text!r}")
    return values


class ScaleStep(BaseModel):
    """``lam * b + <linear, .>``."""

    model_config = ConfigDict(extra="forbid")

    scale: float
    linear: Optional[List[float]] = None


class TranslateStep(BaseModel):
    """``x -> b(x + translate)``."""

    model_config = ConfigDict(extra="forbid")

    translate: List[float]


class RunConfig(BaseModel):
    """Everything a CLI run needs; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    entropy: str = "bgs"
    q: Optional[float] = None
    beta: Optional[float] = None
    alpha: Optional[float] = None
    p: Optional[float] = None
    dim: int = 1
    norm: Optional[str] = None
    pairs: int = 1
    n_split: int = 0
    matrix: Optional[List[List[float]]] = None
    wrappers: List[Union[ScaleStep, TranslateStep]] = []

    suite: str = "all"
    seed: int = DEFAULT_SEED
    samples: int = 10_000
    tolerances: Dict[str, float] = {}
    mu_factor: float = 1.0
    dims: List[int] = list(ACCEPTANCE_DIMS)

    format: str = "json"
    out: Optional[str] = None

    x: Optional[List[float]] = None
    y: Optional[List[float]] = None
    gamma: Optional[float] = None
    s: Optional[float] = None
    kind: Optional[str] = None
    sweep: Optional[str] = None
    radius: Optional[float] = None
    eps_floor: Optional[float] = None
    verbose: bool = False

    @field_validator("entropy")
    @classmethod
    def _known_entropy(cls, value: str) -> str:
        value = value.strip().lower()
        if value not in ENTROPY_NAMES:
            raise ValueError(f"unknown entropy {value!r}; choose from {', '.join(ENTROPY_NAMES)}")
        return value

    @field_validator("norm")
    @classmethod
    def _norm_grammar(cls, value: Optional[str]) -> Optional[str]:
        if value is not None:
            kind, _, arg = value.strip().partition(":")
            split = int(arg) if kind == "mixed" and arg.isdigit() else 0
            NormSpec.parse(value, max(split, 1))
        return value

    @field_validator("suite")
    @classmethod
    def _known_suite(cls, value: str) -> str:
        if value not in SUITE_NAMES:
            raise ValueError(f"unknown suite {value!r}; choose from {', '.join(SUITE_NAMES)}")
        return value

    @field_validator("seed")
    @classmethod
    def _seed_range(cls, value: int) -> int:
        if not 0 <= value <= MAX_SEED:
            raise ValueError(f"seed must lie in [0, 2^64 - 1], got {value}")
        return value

    @field_validator("samples", "dim", "pairs")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("mu_factor")
    @classmethod
    def _positive_factor(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("tolerances")
    @classmethod
    def _known_tolerances(cls, value: Dict[str, float]) -> Dict[str, float]:
        unknown = sorted(set(value) - set(DEFAULT_TOLERANCES))
        if unknown:
            raise ValueError(f"unknown tolerance names {unknown}")
        return value

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in REPORT_FORMATS:
            raise ValueError(f"format must be one of {', '.join(REPORT_FORMATS)}, got {value!r}")
        return value

    @field_validator("kind")
    @classmethod
    def _known_kind(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in WITNESS_KINDS:
            raise ValueError(f"unknown witness kind {value!r}; choose from {', '.join(WITNESS_KINDS)}")
        return value

    @field_validator("x", "y", mode="before")
    @classmethod
    def _vector(cls, value: Any) -> Any:
        if isinstance(value, str):
            return parse_vector(value)
        if isinstance(value, (int, float)):
            return [float(value)]
        return value

    # ------------------------------------------------------------------ #
    # Derived objects
    # ------------------------------------------------------------------ #
    def settings(self) -> SuiteSettings:
        return SuiteSettings(
            seed=self.seed,
            samples=self.samples,
            tolerances=dict(self.tolerances),
            mu_factor=self.mu_factor,
            dims=tuple(self.dims),
        )

    def build_entropies(self) -> List[EntropySpec]:
        """The configured entropy with its wrappers, or the acceptance catalog for ``all``.

        Raises:
            ConfigError: if the parameters do not describe a valid entropy.
        """
        try:
            if self.entropy == "all":
                specs = acceptance_catalog(self.dims, self.seed)
            else:
                specs = [self._single()]
            return [apply_wrappers(spec, self.wrappers) for spec in specs]
        except ValueError as exc:
            raise ConfigError(str(exc), "entropy") from exc

    def build_entropy(self) -> EntropySpec:
        specs = self.build_entropies()
        if len(specs) != 1:
            raise ConfigError("this command needs a single entropy, not 'all'", "entropy")
        return specs[0]

    def _norm(self, dim: int) -> Optional[NormSpec]:
        return None if self.norm is None else NormSpec.parse(self.norm, dim)

    def _single(self) -> EntropySpec:
        name, dim = self.entropy, self.dim
        if name == "bgs":
            return BGS(dim=dim, norm=self._norm(dim))
        if name == "hct":
            return HCT(q=2.0 if self.q is None else self.q, dim=dim, norm=self._norm(dim))
        if name == "burg":
            return Burg(dim=dim, norm=self._norm(dim))
        if name == "iterlog":
            return IteratedLog(dim=dim, norm=self._norm(dim))
        if name == "iterlog-shifted":
            return translated_iterated_log(dim, self._norm(dim))
        if name == "beta":
            return Beta(beta=1.0 if self.beta is None else self.beta, dim=dim, norm=self._norm(dim))
        if name == "alphabeta":
            return AlphaBeta(
                alpha=2.0 if self.alpha is None else self.alpha,
                beta=0.5 if self.beta is None else self.beta,
                dim=dim,
                norm=self._norm(dim),
            )
        if name == "l2lp":
            return L2Lp(p=2.0 if self.p is None else self.p, dim=dim, norm=self._norm(dim))
        if name == "quadratic":
            if self.matrix is None:
                return Quadratic.identity(dim, self._norm(dim))
            return Quadratic(self.matrix, norm=self._norm(len(self.matrix)))
        if name == "ell2":
            return Ell2Type(n_split=self.n_split, pairs=self.pairs, norm=self._norm(2 * self.pairs))
        return ell2_blocks(self.n_split, self.pairs)


def apply_wrappers(spec: EntropySpec, steps: Sequence[Union[ScaleStep, TranslateStep]]) -> EntropySpec:
    for step in steps:
        if isinstance(step, ScaleStep):
            spec = scale_plus_linear(spec, step.scale, step.linear)
        else:
            spec = translate(spec, step.translate)
    return spec


def acceptance_catalog(dims: Sequence[int] = ACCEPTANCE_DIMS, seed: int = DEFAULT_SEED) -> List[EntropySpec]:
    """Every base entropy with the parameters used for acceptance runs.

    The two l2-type entries have 8 pairs whatever ``dims`` says.
    """
    specs: List[EntropySpec] = []
    for dim in dims:
        specs.append(BGS(dim=dim))
        specs.extend(HCT(q=q, dim=dim) for q in (-1.0, 0.5, 1.5, 2.0, 3.0))
        specs.append(Burg(dim=dim))
        specs.append(IteratedLog(dim=dim))
        specs.extend(Beta(beta=b, dim=dim) for b in (0.0, 0.5, 1.0, 2.0))
        specs.extend(AlphaBeta(alpha=a, beta=0.5, dim=dim) for a in (1.0, 2.0))
        specs.append(L2Lp(p=1.5, dim=dim))
        specs.append(Quadratic.random_spd(dim, seed))
    specs.extend(Ell2Type(n_split=k, pairs=8) for k in (0, 2))
    return specs


# ---------------------------------------------------------------------- #
# Loading
# ---------------------------------------------------------------------- #
def default_seed() -> int:
    """``BREGKIT_SEED`` (also read from a ``.env`` file) or 42."""
    load_dotenv()
    raw = os.environ.get(SEED_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_SEED
    try:
        seed = int(raw)
    except ValueError as exc:
        raise ConfigError(f"must be an integer, got {raw!r}", SEED_ENV) from exc
    if not 0 <= seed <= MAX_SEED:
        raise ConfigError(f"seed must lie in [0, 2^64 - 1], got {seed}", SEED_ENV)
    return seed


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a JSON config file; syntax errors carry ``file:line:col``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object", f"{path}:1:1")
    return data


def _location(error: Mapping[str, Any], path: Optional[Path]) -> str:
    field = ".".join(str(part) for part in error.get("loc", ())) or "<root>"
    return f"{path}:{field}" if path else field


def resolve_config(
    path: Optional[Union[str, Path]] = None, overrides: Optional[Mapping[str, Any]] = None
) -> RunConfig:
    """Merge flags over file values over the environment seed over the default.

    ``None`` values in ``overrides`` mean "flag not given".

    Raises:
        ConfigError: on unreadable files, JSON syntax errors or invalid fields.
    """
    file_path = Path(path) if path else None
    data: Dict[str, Any] = load_config_file(file_path) if file_path else {}
    data.update({key: value for key, value in (overrides or {}).items() if value is not None})
    if data.get("seed") is None:
        data["seed"] = default_seed()
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        raise ConfigError(error["msg"], _location(error, file_path)) from exc
    logger.debug(f"resolved config: entropy={config.entropy} suite={config.suite} seed={config.seed}")
    return config
