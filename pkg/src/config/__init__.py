"""Configuration utilities for runs and scripts."""

from .config_manager import DEFAULTS, ConfigManager

__all__ = ["DEFAULTS", "ConfigManager"]
