"""
Configuration module for muntzbasis

Holds the numeric defaults (tolerances, sampling sizes, seed) used across
the library and the CLI.
"""

from .settings import DEFAULT_CONFIG, load_config, save_config, tolerance_summary

__all__ = [
    'DEFAULT_CONFIG',
    'load_config',
    'save_config',
    'tolerance_summary'
]
