"""
Configuration for the classification toolkit.

Every bounded search (group enumeration, automorphism search, zig-zag
intertwining, K0 queries, approximate intertwining) reads its limits from a
ToolkitConfig. Values come from, in increasing priority:

1. the dataclass defaults below,
2. a YAML file passed with ``--config`` (``ToolkitConfig.from_yaml``),
3. ``CLASSIFY_*`` environment variables, optionally loaded from a ``.env`` file.

Nothing silently truncates: code that would exceed a cap raises CapExceededError.
"""

import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

ENV_PREFIX = "CLASSIFY_"


@dataclass(frozen=True)
class ToolkitConfig:
    """
    Search bounds and caps for the toolkit.

    Attributes:
        enumeration_cap: Largest degree n for which A_n / S_n are enumerated.
        automorphism_cap: Largest group order accepted by the automorphism search.
        pairwise_check_limit: Full pairwise homomorphism-law check runs when |G|^2 is at most this.
        intertwining_depth: Default number of zig-zag segments requested from find_intertwining.
        level_bound: Default largest level index visited by the zig-zag search.
        entry_bound: Default largest matrix entry tried by the zig-zag search.
        k0_depth: Default largest level index examined by K0 queries.
        intertwine_max_iterations: Iteration cap of the approximate-intertwining loop.
        metric_pair_limit: Largest number of point pairs for the exhaustive triangle check.
        log_level: Logging level name used by the command-line front end.
    """

    enumeration_cap: int = 8
    automorphism_cap: int = 360
    pairwise_check_limit: int = 3600
    intertwining_depth: int = 3
    level_bound: int = 8
    entry_bound: int = 16
    k0_depth: int = 16
    intertwine_max_iterations: int = 64
    metric_pair_limit: int = 10_000
    log_level: str = "INFO"

    def __post_init__(self):
        self.validate()

    def validate(self) -> bool:
        """
        Validate configuration values.

        Returns:
            True if configuration is valid

        Raises:
            ValueError: If any configuration value is invalid
        """
        for f in fields(self):
            if f.name == "log_level":
                continue
            value = getattr(self, f.name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{f.name} must be an integer, got {value!r}")
            if value <= 0:
                raise ValueError(f"{f.name} must be positive")
        if self.enumeration_cap < 3:
            raise ValueError("enumeration_cap must be at least 3")
        if not isinstance(logging.getLevelName(self.log_level.upper()), int):
            raise ValueError(f"Unknown log_level: {self.log_level}")
        return True

    def with_overrides(self, **overrides: Any) -> "ToolkitConfig":
        """Return a copy with the given fields replaced (None values are ignored)."""
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: Optional["ToolkitConfig"] = None) -> "ToolkitConfig":
        """
        Build a config from a mapping, rejecting unknown keys.

        Args:
            data: Mapping of field names to values.
            base: Config supplying values for missing keys (defaults to the dataclass defaults).

        Returns:
            ToolkitConfig: The merged configuration.

        Raises:
            ValueError: If a key is unknown or a value is invalid.
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}")
        return replace(base or cls(), **data)

    @classmethod
    def from_yaml(cls, path: str, base: Optional["ToolkitConfig"] = None) -> "ToolkitConfig":
        """Load a configuration from a YAML mapping."""
        with open(path, "r", encoding="utf-8") as handle:
            try:
                data = yaml.safe_load(handle) or {}
            except yaml.YAMLError as e:
                raise ValueError(f"Configuration file {path} is not valid YAML: {e}")
        if not isinstance(data, dict):
            raise ValueError(f"Configuration file {path} must contain a mapping")
        logger.info(f"Loaded configuration from {path}")
        return cls.from_dict(data, base=base)

    @classmethod
    def from_env(cls, base: Optional["ToolkitConfig"] = None) -> "ToolkitConfig":
        """
        Read ``CLASSIFY_<FIELD>`` environment variables on top of ``base``.

        A ``.env`` file in the working directory is loaded first, without
        overriding variables already present in the environment.
        """
        load_dotenv()
        overrides: Dict[str, Any] = {}
        for f in fields(cls):
            raw = os.getenv(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            if f.name == "log_level":
                overrides[f.name] = raw.strip().upper()
            else:
                try:
                    overrides[f.name] = int(raw)
                except ValueError:
                    raise ValueError(f"{ENV_PREFIX}{f.name.upper()} must be an integer, got {raw!r}")
        return replace(base or cls(), **overrides)


# Default configuration instance
DEFAULT_CONFIG = ToolkitConfig()

# Small bounds for quick interactive checks
FAST_CONFIG = ToolkitConfig(
    intertwining_depth=2,
    level_bound=5,
    entry_bound=8,
    k0_depth=8,
    intertwine_max_iterations=16,
)

# Larger bounds for exhaustive overnight runs
EXHAUSTIVE_CONFIG = ToolkitConfig(
    intertwining_depth=4,
    level_bound=12,
    entry_bound=32,
    k0_depth=32,
    intertwine_max_iterations=256,
    metric_pair_limit=1_000_000,
)

_active_config: ToolkitConfig = DEFAULT_CONFIG


def get_config() -> ToolkitConfig:
    """Return the process-wide active configuration."""
    return _active_config


def set_config(config: ToolkitConfig) -> None:
    """Replace the process-wide active configuration."""
    global _active_config
    config.validate()
    _active_config = config


def resolve_config(config: Optional[ToolkitConfig]) -> ToolkitConfig:
    """Return ``config`` or, when None, the active configuration."""
    return config if config is not None else _active_config
