"""
Workbench Configuration.

Loads config.yml (with ${VAR:-default} environment expansion) into pydantic
settings, and defines RunConfig, the validated parameter set of one CLI
invocation. Every emitted artifact echoes its RunConfig.

Lookup order for the settings file:
    1. explicit path (``--config``)
    2. env ``UNITROOT_CONFIG``
    3. ``./config.yml``
    4. built-in defaults
"""

import os
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

_ENV_PATTERN = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?\}")

COMMANDS = (
    "trace-table",
    "fiber",
    "lfun",
    "fredholm",
    "slopes",
    "gm-probe",
    "denom-scan",
    "avg-bound",
    "congruence",
    "thm22-check",
)


# ============================================================================
# Settings file
# ============================================================================

class CacheSettings(BaseModel):
    dir: str = Field(default="~/.cache/unitroot", description="Trace-table cache directory")
    compute_missing: bool = Field(default=True, description="Compute absent tables on the fly")


class DefaultSettings(BaseModel):
    tdeg: int = Field(default=6, ge=0)
    prec: int = Field(default=4, ge=1)
    jobs: int = Field(default=1, ge=1)
    out: str = Field(default="json")


class EnvelopeSettings(BaseModel):
    primes: List[int] = Field(default_factory=lambda: [3, 5, 7])
    max_degree: Dict[int, int] = Field(default_factory=lambda: {3: 8, 5: 6, 7: 6})
    max_prec: int = 6


class FeatureSettings(BaseModel):
    analytic_unit_root: bool = False


class LoggingSettings(BaseModel):
    level: str = "INFO"
    rich_tracebacks: bool = False
    show_traceback_locals: bool = False
    logging_colors: Dict[str, str] = Field(default_factory=dict)


class WorkbenchSettings(BaseModel):
    """Parsed config.yml."""
    cache: CacheSettings = Field(default_factory=CacheSettings)
    defaults: DefaultSettings = Field(default_factory=DefaultSettings)
    envelopes: EnvelopeSettings = Field(default_factory=EnvelopeSettings)
    features: FeatureSettings = Field(default_factory=FeatureSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @property
    def cache_dir(self) -> Path:
        return Path(self.cache.dir).expanduser()


def expand_env(value: Any) -> Any:
    """Recursively expand ${VAR} and ${VAR:-default} in strings."""
    if isinstance(value, str):
        return _ENV_PATTERN.sub(
            lambda m: os.environ.get(m.group(1), m.group(2) if m.group(2) is not None else ""),
            value,
        )
    if isinstance(value, dict):
        return {k: expand_env(v) for k, v in value.items()}
    if isinstance(value, list):
        return [expand_env(v) for v in value]
    return value


def find_config_file(path: Optional[str] = None) -> Optional[Path]:
    if path:
        return Path(path)
    env_path = os.getenv("UNITROOT_CONFIG")
    if env_path:
        return Path(env_path)
    local = Path.cwd() / "config.yml"
    return local if local.exists() else None


def load_settings(path: Optional[str] = None) -> WorkbenchSettings:
    """Load workbench settings, falling back to built-in defaults."""
    config_file = find_config_file(path)
    if config_file is None:
        raw: Dict[str, Any] = {}
        if os.getenv("UNITROOT_CACHE_DIR"):
            raw = {"cache": {"dir": os.environ["UNITROOT_CACHE_DIR"]}}
        return WorkbenchSettings.model_validate(raw)

    with open(config_file, "r", encoding="utf-8") as handle:
        raw = yaml.safe_load(handle) or {}
    return WorkbenchSettings.model_validate(expand_env(raw))


# ============================================================================
# Per-run configuration
# ============================================================================

def parse_weights(text: str) -> List[int]:
    """Parse ``a..b`` (inclusive) or a comma list into sorted distinct weights."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty weight range {text!r}")
        return list(range(start, stop + 1))
    return sorted({int(part) for part in text.split(",") if part.strip()})


class RunConfig(BaseModel):
    """Validated parameters of one workbench run."""

    command: str = Field(description="One of the workbench commands")
    p: int = Field(description="Odd prime")
    k: Optional[int] = Field(default=None, description="Weight exponent k (any sign)")
    k1: Optional[int] = Field(default=None, description="First weight of a congruence check")
    k2: Optional[int] = Field(default=None, description="Second weight of a congruence check")
    weights: Optional[List[int]] = Field(default=None, description="Scanned weights")
    m: Optional[int] = Field(default=None, ge=0, description="Congruence level: k1 = k2 mod (p-1)p^m")
    tdeg: int = Field(ge=0, description="N: truncation degree in T")
    prec: int = Field(ge=1, description="M: precision exponent, work modulo p^M")
    max_deg: int = Field(ge=1, description="Largest closed-point degree in the trace table")
    smax: Optional[str] = Field(default=None, description="Slope bound s_max (or A for avg-bound)")
    lam: Optional[str] = Field(default=None, description="Fiber parameter as dot digits")
    deg: int = Field(default=1, ge=1, description="Degree of the field holding lambda")
    on: str = Field(default="L", description="Object of a congruence check: L or D")
    cache: Optional[str] = Field(default=None, description="Cache directory")
    out: str = Field(default="json", description="json | csv")
    jobs: int = Field(default=1, ge=1, description="Worker count for the fiber sweep")
    analytic_unit_root: bool = Field(default=False, description="Use the analytic unit root path")

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value!r}; expected one of {', '.join(COMMANDS)}")
        return value

    @field_validator("p")
    @classmethod
    def _odd_prime(cls, value: int) -> int:
        if value < 3 or not isprime(value):
            raise ValueError(f"--p must be an odd prime, got {value}")
        return value

    @field_validator("out")
    @classmethod
    def _out_format(cls, value: str) -> str:
        if value not in ("json", "csv"):
            raise ValueError(f"--out must be json or csv, got {value!r}")
        return value

    @field_validator("on")
    @classmethod
    def _congruence_object(cls, value: str) -> str:
        if value not in ("L", "D"):
            raise ValueError(f"congruence object must be L or D, got {value!r}")
        return value

    @field_validator("smax")
    @classmethod
    def _rational_smax(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and Fraction(value) < 0:
            raise ValueError(f"--smax must be non-negative, got {value}")
        return value

    @model_validator(mode="after")
    def _table_covers_truncation(self) -> "RunConfig":
        if self.command not in ("fiber", "trace-table") and self.max_deg < self.tdeg:
            raise ValueError(
                f"--max-deg ({self.max_deg}) must be at least --tdeg ({self.tdeg})"
            )
        return self

    @property
    def slope_bound(self) -> Optional[Fraction]:
        return Fraction(self.smax) if self.smax is not None else None

    def echo(self) -> Dict[str, Any]:
        """Parameter block embedded in every artifact.

        Execution-only fields (worker count, cache location) are left out so
        artifacts do not depend on where or how wide the run was.
        """
        return self.model_dump(exclude={"jobs", "cache"})

    def envelope_warnings(self, settings: WorkbenchSettings) -> List[str]:
        warnings = []
        env = settings.envelopes
        if self.p not in env.primes:
            warnings.append(f"p={self.p} is outside the desk-scale primes {env.primes}")
        limit = env.max_degree.get(self.p)
        if limit is not None and self.max_deg > limit:
            warnings.append(f"max point degree {self.max_deg} exceeds envelope {limit} for p={self.p}")
        if self.prec > env.max_prec:
            warnings.append(f"precision M={self.prec} exceeds envelope {env.max_prec}")
        return warnings
