"""
Structured logging setup for the CLI and library runs.

PURPOSE:
- Configure consistent JSON-formatted logs for every mabisim command.
- Logs go to stderr so stdout stays reserved for verdicts, reports and `.ma` text.

CONTEXT:
- Called once by src.cli.main (and by the test suite's conftest).
- Library modules use structlog.get_logger(__name__) and never configure anything.
"""

from __future__ import annotations

import logging
import os
import sys
from typing import Optional, TextIO

import structlog


def configure_logging(level: Optional[str] = None, stream: Optional[TextIO] = None):
    """
    Configure structured JSON logging for the current process.

    parameters:
    - level: str | None – log level name; falls back to LOG_LEVEL, then WARNING.
    - stream: text stream for log lines (default = sys.stderr).

    returns:
    - structlog.BoundLogger – pre-configured logger bound with service metadata.

    example log entry:
    {
      "event": "refine.split",
      "level": "debug",
      "timestamp": "2026-10-18T13:00:00Z",
      "service": "mabisim",
      "block": 0,
      "action": "tau"
    }
    """
    # Explicit level first, then LOG_LEVEL, then WARNING.
    level = (level or os.getenv("LOG_LEVEL", "WARNING")).upper()
    numeric = getattr(logging, level, logging.WARNING)

    # Route the stdlib root logger to stderr; basicConfig is a no-op on re-entry, so set the level too.
    logging.basicConfig(format="%(message)s", stream=stream or sys.stderr, level=numeric)
    logging.getLogger().setLevel(numeric)

    # Configure structlog processors:
    # - Drop events below the level before rendering.
    # - Add timestamps, log level and structured exception info.
    # - Render every event as one JSON line.
    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    # Return a pre-bound logger with service and environment context.
    return structlog.get_logger().bind(service="mabisim", env=os.getenv("ENV", "dev"))
