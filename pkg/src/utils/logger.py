import logging
import os
from typing import Union


def setup_logger(
    name: str, log_file: str = "logs/signed_geometry.log", level: Union[int, str] = logging.INFO
) -> logging.Logger:
    """
    Sets up a logger with the specified name, log file, and logging level.

    Calling it again for the same name only updates the level; handlers are attached once.

    Args:
        name (str): Name of the logger.
        log_file (str): Path to the log file.
        level (int | str): Logging level (e.g., logging.INFO, "DEBUG").

    Returns:
        logging.Logger: Configured logger instance.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if logger.handlers:
        for handler in logger.handlers:
            handler.setLevel(level)
        return logger

    # Create file handler
    log_dir = os.path.dirname(log_file)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir, exist_ok=True)
    file_handler = logging.FileHandler(log_file)
    file_handler.setLevel(level)

    # Console handler writes to stderr; stdout is reserved for reports
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)

    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)
    logger.propagate = False

    return logger
