#!/usr/bin/env python3
"""
Numeric settings for muntzbasis

Every tolerance and sampling size the library uses has a named default here.
Values can be overridden from a JSON file and from MUNTZ_* environment
variables.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

# Default configuration values
DEFAULT_CONFIG: Dict[str, Any] = {
    # Quadrature
    'quad_tol': 1e-10,
    'quad_max_panels': 20000,

    # Sup-norm estimation
    'sup_refine': 1e-9,
    'sup_scan_points': 4096,
    'sup_candidates': 8,

    # Fourier coefficients: K defaults to coefficient_factor * max(n)
    'coefficient_factor': 4,

    # Discrete minimax programs
    'grid_factor': 32,
    'refinement_passes': 1,

    # Elimination and rank decisions
    'pivot_tol': 1e-10,
    'rank_tol': 1e-10,

    # Kernel series
    'kernel_tol': 1e-8,
    'kernel_max_terms': 10 ** 7,

    # Weak norms and disc maxima
    'weak_scan_points': 2 ** 20,
    'disc_points': 4096,

    # Basis diagnostics
    'inclination_directions': 64,

    # Reproducibility
    'seed': 0x5EED,

    # Logging
    'log_level': 'INFO',
    'log_file': None,
    'verbose': False,

    # Concurrency
    'max_workers': 4,
}

_POSITIVE_FLOATS = ('quad_tol', 'sup_refine', 'pivot_tol', 'rank_tol', 'kernel_tol')
_POSITIVE_INTS = ('quad_max_panels', 'sup_scan_points', 'sup_candidates', 'coefficient_factor',
                  'grid_factor', 'kernel_max_terms', 'weak_scan_points', 'disc_points',
                  'inclination_directions', 'max_workers')


def load_config(config_file: Optional[str] = None) -> Dict[str, Any]:
    """
    Load numeric settings from file and environment variables.

    Args:
        config_file: Path to configuration file (JSON)

    Returns:
        Configuration dictionary
    """
    config = DEFAULT_CONFIG.copy()

    if config_file and os.path.exists(config_file):
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                file_config = json.load(f)
            config.update({k: v for k, v in file_config.items() if k in DEFAULT_CONFIG})
            logging.info(f"Configuration loaded from: {config_file}")
        except (OSError, json.JSONDecodeError) as e:
            logging.warning(f"Failed to load config file {config_file}: {e}")

    config = _load_env_overrides(config)
    return _validate_config(config)


def _load_env_overrides(config: Dict[str, Any]) -> Dict[str, Any]:
    """Load configuration overrides from environment variables."""
    env_mappings: Dict[str, Tuple[str, Callable[[str], Any]]] = {
        'MUNTZ_QUAD_TOL': ('quad_tol', float),
        'MUNTZ_QUAD_MAX_PANELS': ('quad_max_panels', int),
        'MUNTZ_SUP_REFINE': ('sup_refine', float),
        'MUNTZ_SUP_SCAN_POINTS': ('sup_scan_points', int),
        'MUNTZ_GRID_FACTOR': ('grid_factor', int),
        'MUNTZ_PIVOT_TOL': ('pivot_tol', float),
        'MUNTZ_RANK_TOL': ('rank_tol', float),
        'MUNTZ_KERNEL_TOL': ('kernel_tol', float),
        'MUNTZ_WEAK_SCAN_POINTS': ('weak_scan_points', int),
        'MUNTZ_SEED': ('seed', lambda value: int(value, 0)),
        'MUNTZ_LOG_LEVEL': ('log_level', str),
        'MUNTZ_LOG_FILE': ('log_file', str),
        'MUNTZ_VERBOSE': ('verbose', _str_to_bool),
        'MUNTZ_MAX_WORKERS': ('max_workers', int),
    }

    for env_var, (config_key, converter) in env_mappings.items():
        env_value = os.getenv(env_var)
        if env_value is not None:
            try:
                config[config_key] = converter(env_value)
                logging.debug(f"Environment override: {config_key} = {config[config_key]}")
            except (ValueError, TypeError) as e:
                logging.warning(f"Invalid environment variable {env_var}={env_value}: {e}")

    return config


def _str_to_bool(value: str) -> bool:
    """Convert string to boolean."""
    return value.lower() in ('true', '1', 'yes', 'on', 'enabled')


def _validate_config(config: Dict[str, Any]) -> Dict[str, Any]:
    """Validate and normalize configuration values."""
    for key in _POSITIVE_FLOATS:
        value = config[key]
        if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
            logging.warning(f"Invalid {key}: {value}, using default")
            config[key] = DEFAULT_CONFIG[key]

    for key in _POSITIVE_INTS:
        value = config[key]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            logging.warning(f"Invalid {key}: {value}, using default")
            config[key] = DEFAULT_CONFIG[key]

    if not isinstance(config['seed'], int) or not 0 <= config['seed'] < 2 ** 64:
        logging.warning(f"Invalid seed: {config['seed']}, using default")
        config['seed'] = DEFAULT_CONFIG['seed']

    valid_log_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
    if str(config['log_level']).upper() not in valid_log_levels:
        config['log_level'] = DEFAULT_CONFIG['log_level']

    return config


def save_config(config: Dict[str, Any], config_file: str) -> None:
    """
    Save configuration to file.

    Args:
        config: Configuration dictionary
        config_file: Path to save configuration
    """
    config_path = Path(config_file)
    config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, 'w', encoding='utf-8') as f:
        json.dump(config, f, indent=2, sort_keys=True)

    logging.info(f"Configuration saved to: {config_file}")


def tolerance_summary(config: Dict[str, Any]) -> Dict[str, Any]:
    """Tolerances embedded in every artifact."""
    keys = ('quad_tol', 'sup_refine', 'grid_factor', 'refinement_passes', 'pivot_tol',
            'rank_tol', 'kernel_tol', 'weak_scan_points')
    return {key: config[key] for key in keys if key in config}
