"""
Shared logger factory for the pipelines and the command-line entry point.
"""

import logging

from src.utils.config import Config
from src.utils.logger import setup_logger

LIBRARY_LOGGER = "src"


def get_pipeline_logger(pipeline_name: str, config: Config) -> logging.Logger:
    """
    Factory function to create a standardized logger for pipeline components.

    The library logger (``src``) is configured with the same file and level, so records emitted by
    ``logging.getLogger(__name__)`` inside the library land next to the pipeline's own records.

    Args:
        pipeline_name (str): Name of the pipeline (e.g., 'certificate_pipeline', 'sign_scan_pipeline')
        config (Config): Configuration instance containing log settings

    Returns:
        Logger: Configured logger instance for the specified pipeline
    """
    setup_logger(name=LIBRARY_LOGGER, log_file=config.log_file, level=config.log_level)
    return setup_logger(
        name=pipeline_name,
        log_file=config.log_file,
        level=config.log_level,
    )
