"""Callback system for firecast training.

This module provides a minimal event-based callback system that allows
tracking and responding to progress while a model trains.
"""

from enum import Enum


class TrainingEvent(Enum):
    """Enum of supported callback event types."""

    EPOCH_START = "epoch_start"  # Called before the first batch of an epoch
    BATCH_END = "batch_end"  # Called after each parameter update
    EPOCH_END = "epoch_end"  # Called once train (and validation) metrics are known


__all__ = ["TrainingEvent"]
