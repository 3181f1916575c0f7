import os
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

load_dotenv()


class CoeffSettings(BaseModel):
    """Equality settings for Q(s, v)."""

    fast_equality: bool = Field(False, description="Reject unequal values by evaluation first")
    probe_points: int = Field(3, ge=1, le=7, description="Rational points used by the fast path")


class SuiteLimits(BaseModel):
    """Bounds record of the verification suites."""

    model_config = ConfigDict(extra="forbid")

    # field
    field_samples: int = Field(200, ge=1)
    field_points: int = Field(5, ge=1)
    ring_n_max: int = Field(8, ge=1)
    # torus
    relation_bound: int = Field(4, ge=1)
    associativity_samples: int = Field(200, ge=1)
    associativity_bound: int = Field(3, ge=1)
    max_word_length: int = Field(3, ge=1)
    jacobi_bound: int = Field(2, ge=1)
    equivariance_samples: int = Field(50, ge=1)
    # certificates
    max_det: int = Field(20, ge=1)
    certificate_bound: int = Field(5, ge=1)
    collapse_samples: int = Field(100, ge=1)
    collapse_bound: int = Field(4, ge=1)
    # annulus
    n_max: int = Field(8, ge=1)
    hook_size_max: int = Field(10, ge=1)
    # bracket
    bracket_samples: int = Field(100, ge=1)
    bracket_bound: int = Field(3, ge=1)
    cheb_n_max: int = Field(10, ge=0)
    log_order: int = Field(12, ge=1)


class Config:
    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path or EnvConfig.CONFIG_PATH or self._get_default_config_path()
        self.config = self._load_config()

    def _get_default_config_path(self) -> str:
        return os.path.join(os.path.dirname(__file__), "..", "..", "configs", "skein_config.yaml")

    def _load_config(self) -> Dict[str, Any]:
        if os.path.exists(self.config_path):
            with open(self.config_path, "r") as f:
                return yaml.safe_load(f) or {}
        return {}

    def get(self, key: str, default: Any = None) -> Any:
        """Look up a dotted key such as "verification.limits.max_det"."""
        node: Any = self.config
        for part in key.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    def set(self, key: str, value: Any) -> None:
        *parents, last = key.split(".")
        node = self.config
        for part in parents:
            node = node.setdefault(part, {})
        node[last] = value

    def save(self) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(self.config_path)), exist_ok=True)
        with open(self.config_path, "w") as f:
            yaml.dump(self.config, f, default_flow_style=False)

    # -- typed sections --------------------------------------------------

    def coeff_settings(self) -> CoeffSettings:
        settings = dict(self.get("coeff", {}) or {})
        if EnvConfig.FAST_EQUALITY is not None:
            settings["fast_equality"] = EnvConfig.FAST_EQUALITY
        return CoeffSettings(**settings)

    def suite_limits(self, **overrides: Any) -> SuiteLimits:
        limits = dict(self.get("verification.limits", {}) or {})
        limits.update({k: v for k, v in overrides.items() if v is not None})
        return SuiteLimits(**limits)

    @property
    def seed(self) -> int:
        if EnvConfig.SEED is not None:
            return EnvConfig.SEED
        return int(self.get("verification.seed", 0))

    @property
    def workers(self) -> int:
        if EnvConfig.WORKERS is not None:
            return EnvConfig.WORKERS
        return int(self.get("verification.workers", 1))

    @property
    def max_exponent(self) -> int:
        return int(self.get("parser.max_exponent", 64))

    @property
    def log_level(self) -> str:
        return EnvConfig.LOG_LEVEL or str(self.get("logging.level", "WARNING"))


def _env_int(name: str) -> Optional[int]:
    value = os.getenv(name)
    return int(value) if value not in (None, "") else None


def _env_bool(name: str) -> Optional[bool]:
    value = os.getenv(name)
    if value in (None, ""):
        return None
    return value.strip().lower() in ("1", "true", "yes", "on")


# Environment variables
class EnvConfig:
    CONFIG_PATH = os.getenv("SKEIN_CONFIG_PATH")
    LOG_LEVEL = os.getenv("SKEIN_LOG_LEVEL")
    SEED = _env_int("SKEIN_SEED")
    FAST_EQUALITY = _env_bool("SKEIN_FAST_EQUALITY")
    WORKERS = _env_int("SKEIN_WORKERS")
