"""Structured JSON logging."""

import json
import logging
from datetime import UTC, datetime
from typing import Any

PACKAGE_LOGGER = "isac_beamscan"
PIPELINE_LOGGER = "isac_beamscan.pipeline"

# Derived at import so attributes added by newer Pythons (taskName) are skipped too.
_STANDARD_LOGRECORD_KEYS: frozenset[str] = frozenset(
    logging.LogRecord(
        name="", level=0, pathname="", lineno=0, msg="", args=(), exc_info=None
    ).__dict__.keys()
)

# Emitted first, in this order, when present on the record.
_DOMAIN_FIELDS = ("event_id", "event_type", "stage", "figure", "sweep_value", "emitted")


class JSONFormatter(logging.Formatter):
    """One JSON object per record with a UTC ISO-8601 timestamp."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: dict[str, Any] = {
            "timestamp": datetime.now(UTC).isoformat(),
            "level": record.levelname,
            "message": record.getMessage(),
            "logger": record.name,
        }

        for field in _DOMAIN_FIELDS:
            if hasattr(record, field):
                log_data[field] = getattr(record, field)

        for key, value in vars(record).items():
            if key not in _STANDARD_LOGRECORD_KEYS and key not in log_data:
                log_data[key] = value

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        try:
            return json.dumps(log_data, default=str)
        except Exception:
            return str(log_data)


def _setup_json_handler(logger: logging.Logger, level: int | None) -> None:
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(JSONFormatter())
        logger.addHandler(handler)
    if level is not None:
        logger.setLevel(level)
    logger.propagate = False


def configure_pipeline_logger(level: int | None = None) -> logging.Logger:
    """Return the pipeline logger with a JSON handler installed.

    Args:
        level: Level to set; ``None`` inherits from the package logger.
    """
    logger = logging.getLogger(PIPELINE_LOGGER)
    _setup_json_handler(logger, level)
    return logger


def get_logger(name: str = PACKAGE_LOGGER, level: int | None = logging.INFO) -> logging.Logger:
    """Return ``name``'s logger with a JSON handler installed."""
    logger = logging.getLogger(name)
    _setup_json_handler(logger, level)
    return logger
