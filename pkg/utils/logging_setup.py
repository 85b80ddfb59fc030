"""Logging configuration shared by the command-line entry points."""

import logging

from utils.config import config

def configure_logging(quiet: bool = False) -> None:
    """Configure root logging; `quiet` lowers verbosity to warnings."""
    level = logging.WARNING if quiet else getattr(logging, config.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(levelname)s:%(name)s:%(message)s',
        force=True,
    )
