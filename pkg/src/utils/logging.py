"""Logging utilities."""

import logging
from typing import Optional

from ..config.defaults import RUNTIME_CONFIG

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None) -> None:
    """Setup logging configuration for the application."""
    level_name = (level or RUNTIME_CONFIG["log_level"]).upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.WARNING), format=LOG_FORMAT)
    logging.getLogger("jsonschema").setLevel(logging.WARNING)


def enable_verbose_logging() -> None:
    """Enable verbose logging for debugging."""
    logging.getLogger().setLevel(logging.DEBUG)
    logging.getLogger("src").setLevel(logging.DEBUG)
    print("Verbose logging enabled")
