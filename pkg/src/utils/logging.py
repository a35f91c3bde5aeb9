"""
Structured logging configuration for the solver suite.
"""

from __future__ import annotations

import logging
import os
import sys

import structlog

# PACCP_LOG vocabulary -> stdlib level names.
_VERBOSITY_LEVELS = {
    "quiet": "WARNING",
    "info": "INFO",
    "debug": "DEBUG",
}


def level_from_verbosity(name: str) -> str:
    """Map a PACCP_LOG value (quiet/info/debug) onto a stdlib level name."""
    if not name:
        return "INFO"
    key = name.strip().lower()
    if key in _VERBOSITY_LEVELS:
        return _VERBOSITY_LEVELS[key]
    # Plain level names (WARNING, ERROR, ...) are accepted as well.
    upper = key.upper()
    if isinstance(getattr(logging, upper, None), int):
        return upper
    return "INFO"


def _coerce_level(log_level: str) -> int:
    return getattr(logging, level_from_verbosity(log_level), logging.INFO)


def configure_logging(
    log_level: str = "info",
    log_file: str = "",
    log_json: bool = False,
) -> None:
    level = _coerce_level(log_level)

    # Logs go to stderr so stdout stays reserved for summary lines.
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_path = log_file.strip() if log_file else ""
    if log_path:
        log_dir = os.path.dirname(log_path)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    logging.basicConfig(level=level, handlers=handlers, format="%(message)s", force=True)

    processors = [
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if log_json:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=False))

    structlog.configure(
        processors=processors,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.make_filtering_bound_logger(level),
        cache_logger_on_first_use=True,
    )
