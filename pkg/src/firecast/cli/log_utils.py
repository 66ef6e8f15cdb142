from __future__ import annotations

import json
import logging
import sys
from typing import Any

import click

from firecast.common.results import Metrics


class CleanFormatter(logging.Formatter):
    """Custom formatter that omits the WARNING: prefix for warning messages."""

    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        original_levelname = record.levelname
        if record.levelname == "WARNING":
            record.levelname = ""
        result = super().format(record)
        record.levelname = original_levelname
        return result


def setup_logger(log_level: str = "INFO") -> logging.Logger:
    """Send all firecast logging to stderr through one handler and return the CLI logger."""
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    level = getattr(logging, log_level.upper(), logging.INFO)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(CleanFormatter("%(asctime)s - %(levelname)s %(message)s", datefmt="%H:%M:%S"))
    root_logger.addHandler(handler)
    root_logger.setLevel(level)

    logger = logging.getLogger("firecast.cli")
    logger.setLevel(level)
    return logger


class EpochPrinter:
    """Training callback printing one Metrics JSON line per epoch on stdout."""

    def __init__(self, logger: logging.Logger, total_epochs: int) -> None:
        self.logger = logger
        self.total_epochs = total_epochs
        self.batches = 0

    def epoch_start(self, epoch: int) -> None:
        self.batches = 0
        self.logger.debug(f"starting epoch {epoch}/{self.total_epochs}")

    def batch_end(self, batch_index: int) -> None:
        self.batches = batch_index + 1

    def epoch_end(self, epoch: int, train_metrics: Metrics, val_metrics: Metrics | None) -> None:
        line: dict[str, Any] = {"epoch": epoch, **train_metrics.to_dict()}
        if val_metrics is not None:
            line["val_loss"] = val_metrics.loss
            line["val_accuracy"] = val_metrics.accuracy
        click.echo(json.dumps(line))
        self.logger.debug(f"epoch {epoch} ran {self.batches} batches")
