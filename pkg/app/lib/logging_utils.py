from __future__ import annotations

import logging
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path
from typing import Optional, TextIO

DEBUG_LOGGER = "clausetrim.debug"
LIBRARY_LOGGER = "clausetrim"

# attributes every LogRecord carries; anything else arrived through ``extra=``
_RESERVED = frozenset(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {"message", "asctime"}


class EventFormatter(logging.Formatter):
    """Appends the ``extra={...}`` fields of an event as sorted ``key=value`` pairs."""

    def format(self, record: logging.LogRecord) -> str:
        base = super().format(record)
        fields = {key: value for key, value in record.__dict__.items() if key not in _RESERVED}
        if not fields:
            return base
        return base + " " + " ".join(f"{key}={fields[key]}" for key in sorted(fields))


def library_logger_level(level: str) -> int:
    return getattr(logging, level.upper(), logging.WARNING)


def configure_cli_logging(level: int, stream: TextIO) -> logging.Logger:
    """Route the ``clausetrim`` loggers to ``stream``; replaces the handler from an earlier call."""
    logger = logging.getLogger(LIBRARY_LOGGER)
    for handler in list(logger.handlers):
        if getattr(handler, "_clausetrim_cli", False):
            logger.removeHandler(handler)
    handler = logging.StreamHandler(stream)
    handler.setFormatter(EventFormatter("%(levelname)s %(name)s %(message)s"))
    handler._clausetrim_cli = True  # type: ignore[attr-defined]
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def setup_debug_logging(
    base_dir: Path,
    *,
    level: int = logging.DEBUG,
    backup_count: int = 7,
    log_name: Optional[str] = None,
) -> logging.Logger:
    """
    Rotating debug log at <base_dir>/logs/<log_name or debug.log>, rolled over at UTC midnight.
    Repeated calls reuse the existing handler.
    """
    log_dir = Path(base_dir) / "logs"
    log_dir.mkdir(parents=True, exist_ok=True)
    log_path = log_dir / (log_name or "debug.log")

    logger = logging.getLogger(DEBUG_LOGGER)
    if not any(isinstance(handler, TimedRotatingFileHandler) for handler in logger.handlers):
        handler = TimedRotatingFileHandler(
            filename=str(log_path),
            when="midnight",
            backupCount=backup_count,
            encoding="utf-8",
            utc=True,
        )
        handler.setFormatter(
            EventFormatter(
                "%(asctime)s | %(levelname)s | %(name)s | %(message)s",
                datefmt="%Y-%m-%dT%H:%M:%S%z",
            )
        )
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
