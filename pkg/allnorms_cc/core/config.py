"""Configuration management for the all-norms clustering toolkit."""

import logging
import os
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator
from rich.console import Console
from rich.logging import RichHandler

from .errors import InvalidParameterError


class AdjustmentConfig(BaseModel):
    """Thresholds used when turning the correlation metric into the adjusted one."""

    round_up_threshold: float = Field(
        default=0.7, description="Negative edges with distance above this are rounded up to 1"
    )
    singleton_factor: float = Field(
        default=10 / 3,
        description="Isolate u when its near negative neighbours reach this multiple of its degree",
    )

    @field_validator("round_up_threshold")
    @classmethod
    def validate_threshold(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"round_up_threshold must lie in (0, 1), got {v}")
        return v

    @field_validator("singleton_factor")
    @classmethod
    def validate_factor(cls, v: float) -> float:
        if v <= 0.0:
            raise ValueError(f"singleton_factor must be positive, got {v}")
        return v


class RoundingParams(BaseModel):
    """Parameters of the ball-growing rounding."""

    radius: float = Field(default=0.2, description="Ball radius r; clusters use radius 2r")
    naive: bool = Field(
        default=False, description="Recompute every ball load each round (differential testing)"
    )

    @field_validator("radius")
    @classmethod
    def validate_radius(cls, v: float) -> float:
        if not 0.0 < v < 0.5:
            raise ValueError(f"radius must lie in (0, 1/2), got {v}")
        return v


class HarnessConfig(BaseModel):
    """Defaults for the verification and benchmark harness."""

    seed: int = Field(default=0, ge=0, description="Base seed for generated instances")
    trials: int = Field(default=50, ge=1, description="Random instances per verify suite")
    n: int = Field(default=60, ge=1, description="Vertex count of verify instances")
    max_n: int = Field(default=7, ge=1, le=12, description="Largest n checked against the exact oracle")
    cost_trials: int = Field(default=200, ge=1, description="Random labelings for the oracle suites")
    bench_sizes: List[int] = Field(default_factory=lambda: [1000, 2000])
    bench_delta: int = Field(default=16, ge=0)
    workers: int = Field(default=4, ge=1, le=64, description="Concurrent trials")


class LoggingConfig(BaseModel):
    """Logging behaviour."""

    debug: bool = Field(default=False, description="Enable debug logging")
    verbose: bool = Field(default=False, description="Enable info logging")


class Config(BaseModel):
    """Main configuration object."""

    adjustment: AdjustmentConfig = Field(default_factory=AdjustmentConfig)
    rounding: RoundingParams = Field(default_factory=RoundingParams)
    harness: HarnessConfig = Field(default_factory=HarnessConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "Config":
        """Load configuration from environment variables."""
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        try:
            adjustment = {
                "round_up_threshold": float(os.getenv("ALLNORMS_ROUND_UP_THRESHOLD", "0.7")),
                "singleton_factor": float(os.getenv("ALLNORMS_SINGLETON_FACTOR", str(10 / 3))),
            }
            rounding = {"radius": float(os.getenv("ALLNORMS_RADIUS", "0.2"))}
            harness = {
                "seed": int(os.getenv("ALLNORMS_SEED", "0")),
                "workers": int(os.getenv("ALLNORMS_WORKERS", "4")),
            }
        except ValueError as e:
            raise InvalidParameterError(f"invalid ALLNORMS_* environment value: {e}")

        config_data: Dict[str, Any] = {
            "adjustment": adjustment,
            "rounding": rounding,
            "harness": harness,
            "logging": {
                "debug": os.getenv("ALLNORMS_DEBUG", "false").lower() == "true",
                "verbose": os.getenv("ALLNORMS_VERBOSE", "false").lower() == "true",
            },
        }

        return cls(**config_data)

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return self.model_dump()

    def save(self, path: str) -> None:
        """Save configuration to a YAML file."""
        import yaml

        with open(path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, default_flow_style=False)

    @classmethod
    def load(cls, path: str) -> "Config":
        """Load configuration from a YAML file."""
        import yaml

        try:
            with open(path, "r", encoding="utf-8") as f:
                config_data = yaml.safe_load(f) or {}
        except (yaml.YAMLError, UnicodeDecodeError) as e:
            raise InvalidParameterError(f"cannot parse config file {path}: {e}")
        if not isinstance(config_data, dict):
            raise InvalidParameterError(f"config file {path} must contain a mapping")

        return cls.model_validate(config_data)


def setup_logging(config: LoggingConfig) -> None:
    """Route package logging to stderr through rich."""
    if config.debug:
        level = logging.DEBUG
    elif config.verbose:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level,
        format="%(name)s - %(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )
