"""Configuration management."""

from .loader import ConfigLoader
from .settings import CheckPipelineConfig, OracleConfig, OutputConfig, Settings, load_settings

__all__ = ["Settings", "load_settings", "ConfigLoader", "OracleConfig", "CheckPipelineConfig", "OutputConfig"]
