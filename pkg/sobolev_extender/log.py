# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up Logging"""
import json
import logging


class JSONFormatter(logging.Formatter):
    """One JSON object per log record."""

    def format(self, record):
        entry = {
            "time": self.formatTime(record, "%Y-%m-%dT%H:%M:%S"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, sort_keys=True)


def use_json_logs():
    # Swap the formatter on every root handler
    for handler in logging.getLogger().handlers:
        handler.setFormatter(JSONFormatter())


logging.basicConfig(
    level="INFO",
    format="%(asctime)s %(levelname)-8s %(name)s - %(message)s",
    datefmt="[%X]",
)

LOGGER = logging.getLogger(__package__)
LOGGER.setLevel(logging.INFO)
