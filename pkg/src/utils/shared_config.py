"""
Shared configuration factory used by the CLI and every pipeline.
"""

import os
from typing import Dict, Mapping, Optional

from src.utils.config import Config

ENV_PREFIX = "SIGNED_GEOMETRY_"

DEFAULTS: Dict[str, str] = {
    "LOG_FILE": "logs/signed_geometry.log",
    "LOG_LEVEL": "INFO",
    "RANDOM_SEED": "20240611",
    "FRUSTRATION_SIZE_LIMIT": "24",
    "CHEEGER_SIZE_LIMIT": "20",
    "SIGN_SCAN_EDGE_LIMIT": "20",
    "P_RESTARTS": "50",
    "P_MAX_ITERATIONS": "1500",
    "FALSIFIER_BUDGET": "24",
    "ZERO_TOLERANCE": "1e-8",
    "BOUND_TOLERANCE": "1e-9",
    "WORKERS": "1",
    "REPORT_DIR": "reports",
}


def get_default_config(environ: Optional[Mapping[str, str]] = None) -> Config:
    """
    Factory function to create the default configuration used across all pipelines.

    Any ``SIGNED_GEOMETRY_<KEY>`` environment variable overrides ``<KEY>``; in particular
    ``SIGNED_GEOMETRY_WORKERS`` sets the worker count of the partitioned enumerations.

    Args:
        environ: Mapping to read overrides from. Defaults to ``os.environ``.

    Returns:
        Config: Default configuration instance with standard settings
    """
    environ = os.environ if environ is None else environ
    values = dict(DEFAULTS)
    for key in DEFAULTS:
        override = environ.get(ENV_PREFIX + key)
        if override is not None and override.strip():
            values[key] = override.strip()
    return Config(config=values)
