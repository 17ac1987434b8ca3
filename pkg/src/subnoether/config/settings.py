"""Configuration settings models."""

from pathlib import Path

from pydantic import BaseModel, Field, ValidationError, field_validator

from subnoether.core.constants import (
    DEFAULT_MAX_RETRIES,
    DEFAULT_MAX_WORKERS,
    DEFAULT_ORACLE_POINTS,
    DEFAULT_SEED,
    DENOMINATOR_BOUND,
    INSTANTIATION_DEGREE,
    NUMERATOR_BOUND,
)
from subnoether.core.exceptions import ConfigurationError

from .loader import ConfigLoader


class OracleConfig(BaseModel):
    """Numeric zero-oracle configuration."""

    points: int = DEFAULT_ORACLE_POINTS
    seed: int = DEFAULT_SEED
    max_retries: int = DEFAULT_MAX_RETRIES
    numerator_bound: int = NUMERATOR_BOUND
    denominator_bound: int = DENOMINATOR_BOUND
    instantiation_degree: int = INSTANTIATION_DEGREE

    @field_validator("points", "seed")
    @classmethod
    def validate_non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError(f"Value must be non-negative, got {value}")
        return value

    @field_validator("max_retries", "numerator_bound", "denominator_bound")
    @classmethod
    def validate_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"Value must be at least 1, got {value}")
        return value

    @field_validator("instantiation_degree")
    @classmethod
    def validate_degree(cls, value: int) -> int:
        allowed = {1, 2, 3}
        if value not in allowed:
            raise ValueError(f"Unsupported instantiation degree '{value}'. Allowed: {sorted(allowed)}")
        return value


class CheckPipelineConfig(BaseModel):
    """Check execution configuration."""

    workers: int = 1
    fail_fast: bool = False

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, value: int) -> int:
        if not 1 <= value <= DEFAULT_MAX_WORKERS:
            raise ValueError(f"workers must be between 1 and {DEFAULT_MAX_WORKERS}, got {value}")
        return value


class OutputConfig(BaseModel):
    """Report output configuration."""

    format: str = "text"
    json_indent: int = 2

    @field_validator("format")
    @classmethod
    def validate_format(cls, value: str) -> str:
        allowed = {"text", "json"}
        if value not in allowed:
            raise ValueError(f"Unsupported output format '{value}'. Allowed: {sorted(allowed)}")
        return value


class Settings(BaseModel):
    """Main configuration settings."""

    oracle: OracleConfig = Field(default_factory=OracleConfig)
    check: CheckPipelineConfig = Field(default_factory=CheckPipelineConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


def load_settings(base_dir: Path | str) -> Settings:
    """Load settings from the configuration file, or defaults when it is absent."""
    loader = ConfigLoader(base_dir)
    if not loader.exists():
        return Settings()
    config = loader.load()
    try:
        return Settings(
            oracle=OracleConfig(**(config.get("oracle") or {})),
            check=CheckPipelineConfig(**(config.get("check") or {})),
            output=OutputConfig(**(config.get("output") or {})),
        )
    except ValidationError as exc:
        raise ConfigurationError(f"Invalid configuration in {loader.config_path}: {exc}") from exc


__all__ = ["Settings", "load_settings", "OracleConfig", "CheckPipelineConfig", "OutputConfig"]
