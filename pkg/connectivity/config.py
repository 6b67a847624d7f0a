"""Constants ledger and run settings.

EcConfig validates one preset of config.yml. CutbenchSettings reads the
CUTBENCH_* environment (and .env) for the seed, preset and paths.
"""

import hashlib
import json
import logging
import math
from pathlib import Path
from typing import Dict, Literal, Optional, Union

import yaml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from errors import InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config.yml"


class EcConfig(BaseModel):
    """Every tunable constant of the connectivity pipelines."""

    preset: str
    small_degree_cutoff: float = Field(gt=0)
    center_c1: float = Field(gt=0)
    r_size_factor: float = Field(gt=0)
    low_factor: float = Field(ge=0)
    low_div: float = Field(gt=0)
    recover_k: int = Field(ge=1)
    h_factor: float = Field(gt=0)
    h_proof_factor: float = Field(gt=0)
    h_variant: Literal["algorithm_box", "proof_text"] = "algorithm_box"
    h_min: int = Field(default=1, ge=1)
    h_max: Optional[int] = None
    mn_coeff: float = Field(gt=0)
    mn_power: float = Field(gt=0)
    clock_factor: float = Field(ge=0)
    mdcp_p_factor: float = Field(gt=0)
    mdcp_abort_factor: float = Field(gt=0)
    mdcp_rounds_factor: float = Field(gt=0)
    stream_c1: float = Field(gt=0)
    stream_rep_factor: float = Field(gt=0)
    memory_constant: float = Field(gt=0)
    memory_power: float = Field(ge=0)
    sequential_c: float = Field(gt=0)
    sequential_repetitions: int = Field(ge=1)
    certificate_epsilon: float = Field(gt=0)
    certificate_switch_divisor: Optional[int] = None
    boruvka_k: int = Field(default=10, ge=1)
    amplification_trials: int = Field(default=40, ge=1)
    modeled_exponent: int = Field(default=8, ge=0)
    verify_limit: int = Field(default=512, ge=2)
    check_invariants: bool = False
    provenance: Dict[str, Literal["paper", "desk"]] = Field(default_factory=dict)
    log_base: Dict[str, Literal["ln", "log2"]] = Field(default_factory=dict)

    @field_validator("h_max")
    @classmethod
    def _h_max_above_min(cls, value, info):
        if value is not None and value < info.data.get("h_min", 1):
            raise ValueError("h_max must be >= h_min")
        return value

    def digest(self) -> str:
        """SHA-256 of the canonical JSON dump."""
        payload = json.dumps(self.model_dump(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def with_overrides(self, **changes) -> "EcConfig":
        return EcConfig.model_validate({**self.model_dump(), **changes})

    # derived quantities; log2(d) is floored at 1 so d = 1 stays usable

    @staticmethod
    def _log2(x: float) -> float:
        return max(1.0, math.log2(max(x, 1)))

    @staticmethod
    def _clamp_probability(p: float, what: str) -> float:
        if p > 1:
            logger.warning(f"{what} probability {p:.3g} > 1, clamped to 1")
            return 1.0
        return p

    def center_probability(self, d: int) -> float:
        return self._clamp_probability(self.center_c1 * self._log2(d) / d, "center")

    def r_size_limit(self, n: int, d: int) -> float:
        return self.r_size_factor * n * self._log2(d) / d

    def low_threshold(self, d: int) -> float:
        return self.low_factor * self._log2(d)

    def low_count_limit(self, n: int, d: int) -> float:
        return n / (self.low_div * d)

    def h_value(self, d: int) -> int:
        factor = self.h_factor if self.h_variant == "algorithm_box" else self.h_proof_factor
        h = max(self.h_min, math.ceil(factor * self._log2(d)))
        return h if self.h_max is None else min(h, self.h_max)

    def mn_threshold(self, n: int) -> float:
        return self.mn_coeff * self._log2(n) ** self.mn_power

    def mdcp_probability(self, n: int, delta: int) -> float:
        return self._clamp_probability(self.mdcp_p_factor * math.log(max(n, 2)) / delta, "mdcp center")

    def mdcp_abort_limit(self, n: int, delta: int) -> float:
        return self.mdcp_abort_factor * n * math.log(max(n, 2)) / delta

    def mdcp_rounds(self, n: int) -> int:
        return max(1, math.ceil(self.mdcp_rounds_factor * self._log2(n)))

    def stream_probability(self, n: int, d: int) -> float:
        return self._clamp_probability(self.stream_c1 * math.log(max(n, 2)) / d, "stream center")

    def stream_repetitions(self, n: int) -> int:
        return max(1, math.ceil(self.stream_rep_factor * self._log2(n)))

    def memory_budget(self, n: int) -> int:
        return math.ceil(self.memory_constant * n * self._log2(n) ** self.memory_power)

    def sequential_probability(self, n: int, delta: int) -> float:
        return self._clamp_probability(self.sequential_c * math.log(max(n, 2)) / delta, "sequential center")


def load_config(preset: str = "desk", path: Union[str, Path, None] = None) -> EcConfig:
    """Load one preset from the constants file."""
    config_path = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    with open(config_path, "r") as f:
        document = yaml.safe_load(f) or {}
    presets = document.get("presets", {})
    if preset not in presets:
        raise InvalidInputError(f"unknown preset {preset!r}", {"known": sorted(presets)})
    return EcConfig.model_validate({"preset": preset, **presets[preset]})


class CutbenchSettings(BaseSettings):
    """Run settings from CUTBENCH_* variables; CLI flags override them."""

    model_config = SettingsConfigDict(env_prefix="CUTBENCH_", env_file=".env", extra="ignore",
                                      populate_by_name=True)

    seed: int = 20240101
    preset: str = "desk"
    config_path: Path = Field(default=DEFAULT_CONFIG_PATH, validation_alias="CUTBENCH_CONFIG")
    log_level: str = "INFO"
    workers: int = Field(default=1, ge=1)

    def load(self) -> EcConfig:
        return load_config(self.preset, self.config_path)
