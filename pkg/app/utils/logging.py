# app/utils/logging.py
"""
Small logging helper.

Usage:
    from app.utils.logging import get_logger
    logger = get_logger("dimforce.lab.sweeps")

Everything logs under the `dimforce` logger tree to stderr, so stdout stays
reserved for JSON output of the CLI.
"""
import logging
import sys
from typing import Optional

PROJECT_LOGGER = "dimforce"
DEFAULT_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


def _ensure_handler() -> None:
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(DEFAULT_FORMAT))
        root.addHandler(handler)


def get_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    if not name.startswith(PROJECT_LOGGER):
        name = f"{PROJECT_LOGGER}.{name}"
    logger = logging.getLogger(name)
    _ensure_handler()
    if level:
        logger.setLevel(level.upper())
    return logger


def configure_logging(level: str = "info") -> logging.Logger:
    """Set the project log level once at start-up (CLI and HTTP app)."""
    _ensure_handler()
    logger = logging.getLogger(PROJECT_LOGGER)
    logger.setLevel(level.upper())
    return logger
