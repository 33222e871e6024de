"""
Manages the tunable defaults of ppgroup.

Responsibilities:
- Loading default settings from data/default_settings.json, once, under a lock.
- Applying PPGROUP_<KEY> environment overrides coerced to the default's type.
- Falling back to built-in values when the file is missing or broken.
"""

import json
import logging
import os
import threading
from typing import Dict, Any, Optional
from ppgroup import config

logger = logging.getLogger(__name__)

BUILTIN_DEFAULTS: Dict[str, Any] = {
    "sample_seed": 20240611,
    "crosscheck_samples": 20,
    "relation_samples": 50,
    "relation_bound": 3,
    "random_preperiod_max": 6,
    "random_period_max": 4,
    "max_rewrite_steps": 200000,
    "bfs_state_limit": 200000,
    "witness_extension_limit": 64,
    "verify_workers": 4,
    "phi_crosscheck_count": 1000,
    "phi_prefix_max": 12,
}

_default_settings: Optional[Dict[str, Any]] = None
_default_settings_lock = threading.Lock()


def _load_default_settings() -> Dict[str, Any]:
    """
    Loads default settings from the JSON file specified in ppgroup.config.
    Keys missing from the file are filled from BUILTIN_DEFAULTS.
    """
    global _default_settings
    if _default_settings is None:
        with _default_settings_lock:
            if _default_settings is None:
                loaded: Dict[str, Any] = {}
                try:
                    with open(config.DEFAULT_SETTINGS_FILE_PATH, 'r', encoding='utf-8') as f:
                        loaded = json.load(f)
                    logger.info(f"Default settings loaded successfully from {config.DEFAULT_SETTINGS_FILE_PATH}")
                except FileNotFoundError:
                    logger.error(f"Default settings file not found at {config.DEFAULT_SETTINGS_FILE_PATH}. Using built-in defaults.")
                except json.JSONDecodeError:
                    logger.error(f"Error decoding JSON from default settings file {config.DEFAULT_SETTINGS_FILE_PATH}. Using built-in defaults.")
                merged = BUILTIN_DEFAULTS.copy()
                merged.update(loaded)
                _default_settings = merged
    return _default_settings


def get_default_settings() -> Dict[str, Any]:
    """Returns a copy of the default settings (file values over built-in ones)."""
    return _load_default_settings().copy()


def _coerce(raw: str, default: Any) -> Any:
    if isinstance(default, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    return raw


def get_setting(key: str) -> Any:
    """
    Returns one setting, honouring a PPGROUP_<KEY> environment override.

    Args:
        key: The settings key, e.g. "sample_seed".

    Returns:
        The effective value. Unknown keys raise KeyError.
    """
    defaults = _load_default_settings()
    if key not in defaults:
        raise KeyError(f"unknown setting {key!r}")
    default = defaults[key]
    raw = os.getenv(f"{config.SETTINGS_ENV_PREFIX}{key.upper()}")
    if raw is None:
        return default
    try:
        return _coerce(raw, default)
    except ValueError:
        logger.warning(f"Ignoring invalid override {config.SETTINGS_ENV_PREFIX}{key.upper()}={raw!r}; keeping {default!r}.")
        return default
