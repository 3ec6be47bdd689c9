"""Logging setup using rich."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from .config import settings

# Human-readable output goes to stderr; stdout is reserved for report JSON.
console = Console(stderr=True)


def configure_logging(level: str | int | None = None) -> None:
    """Install a RichHandler on the root logger.

    Args:
        level: Logging level name or number (default: settings.log_level)
    """
    logging.basicConfig(
        level=level if level is not None else settings.log_level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=False)],
        force=True,
    )
