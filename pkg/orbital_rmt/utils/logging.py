"""
Logging utilities for orbital-rmt with Rich integration.

Colored level output and emoji markers on capable terminals, a plain
stream handler everywhere else, and a SUCCESS level for completed runs.
Honors NO_COLOR, FORCE_COLOR and ORBITAL_RMT_NO_COLOR.
"""

import logging
import os
import sys
from typing import Optional, Union

try:
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.theme import Theme
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

from ..constants import LOG_LEVEL_ENV_VAR, NO_COLOR_ENV_VAR

ROOT_LOGGER_NAME = "orbital_rmt"
SUCCESS_LEVEL = 25

if RICH_AVAILABLE:
    RMT_THEME = Theme({
        "logging.level.success": "bold green",
    })


class EmojiFilter(logging.Filter):
    """
    Logging filter that prefixes messages with a level emoji.

    Works with both the Rich handler and the plain handler.
    """

    EMOJIS = {
        logging.DEBUG: "🔍 ",
        logging.INFO: "ℹ️ ",
        SUCCESS_LEVEL: "✅ ",
        logging.WARNING: "⚠️ ",
        logging.ERROR: "❌ ",
        logging.CRITICAL: "💥 ",
    }

    def __init__(self, use_emojis: bool = True):
        super().__init__()
        self.use_emojis = use_emojis

    def filter(self, record: logging.LogRecord) -> bool:
        if self.use_emojis:
            emoji = self.EMOJIS.get(record.levelno, "")
            if emoji and not str(record.msg).startswith(emoji.strip()):
                record.msg = f"{emoji}{record.msg}"
        return True


class PlainFormatter(logging.Formatter):
    """Formatter for the non-Rich handler."""

    def __init__(self):
        super().__init__("%(levelname)s %(name)s: %(message)s")


def _should_use_colors() -> bool:
    """
    Decide whether to color output.

    NO_COLOR and ORBITAL_RMT_NO_COLOR disable colors, FORCE_COLOR forces
    them; otherwise colors need a tty with a real TERM.
    """
    if os.environ.get("NO_COLOR") or os.environ.get(NO_COLOR_ENV_VAR):
        return False
    if os.environ.get("FORCE_COLOR"):
        return True
    if not sys.stderr.isatty():
        return False
    term = os.environ.get("TERM", "").lower()
    return term not in ("dumb", "")


def _create_rich_handler() -> Optional[logging.Handler]:
    """Create a Rich handler on stderr, or None when colors are off."""
    if not RICH_AVAILABLE or not _should_use_colors():
        return None
    try:
        console = Console(theme=RMT_THEME, stderr=True, force_terminal=True)
        return RichHandler(
            console=console,
            rich_tracebacks=True,
            tracebacks_show_locals=False,
            show_time=False,
            show_path=False,
            markup=False,
        )
    except Exception:
        return None


def _create_standard_handler() -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(PlainFormatter())
    return handler


def _resolve_level(level: Union[int, str, None]) -> int:
    env_level = os.environ.get(LOG_LEVEL_ENV_VAR)
    if env_level:
        level = env_level
    if level is None:
        return logging.WARNING
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        return resolved if isinstance(resolved, int) else logging.WARNING
    return level


def setup_logging(
    level: Union[int, str, None] = None,
    force_standard: bool = False,
    use_emojis: bool = True,
) -> None:
    """
    Configure the package root logger.

    Args:
        level: Logging level; ORBITAL_RMT_LOG_LEVEL overrides it when set
            (default: WARNING)
        force_standard: Use the plain handler even if Rich is available
        use_emojis: Prefix messages with level emojis
    """
    logging.addLevelName(SUCCESS_LEVEL, "SUCCESS")
    resolved = _resolve_level(level)

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.handlers.clear()
    logger.filters.clear()
    logger.propagate = False

    handler = None if force_standard else _create_rich_handler()
    if handler is None:
        handler = _create_standard_handler()
    # Filters on handlers also see records propagated from child loggers.
    handler.addFilter(EmojiFilter(use_emojis=use_emojis))
    handler.setLevel(resolved)

    logger.addHandler(handler)
    logger.setLevel(resolved)


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """
    Get a logger under the orbital_rmt hierarchy.

    Args:
        name: Logger name, usually ``__name__``

    Returns:
        Logger instance; the root is configured on first use
    """
    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    if not root_logger.handlers:
        setup_logging()
    return logging.getLogger(name)


def _log_success(self, message, *args, **kwargs):
    """Log a success message."""
    if self.isEnabledFor(SUCCESS_LEVEL):
        self._log(SUCCESS_LEVEL, message, args, **kwargs)


logging.Logger.success = _log_success  # type: ignore[attr-defined]
