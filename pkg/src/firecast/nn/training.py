"""Mini-batch SGD training and evaluation with binary cross-entropy."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from firecast.callbacks import TrainingEvent
from firecast.callbacks.callback_utils import trigger_event
from firecast.common.constants import FIRE_THRESHOLD
from firecast.common.errors import DimensionError, InputError, TrainingDivergenceError
from firecast.common.results import Metrics
from firecast.config.schema import TrainConfig
from firecast.nn.losses import bce
from firecast.nn.model import Gradients, Model, backward, forward
from firecast.nn.tensor import Tensor

logger = logging.getLogger(__name__)

Sample = tuple[Tensor, int]


@dataclass(frozen=True)
class EpochRecord:
    """Metrics recorded after one epoch."""

    epoch: int
    train: Metrics
    validation: Metrics | None = None

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"epoch": self.epoch, "train": self.train.to_dict()}
        if self.validation is not None:
            data["validation"] = self.validation.to_dict()
        return data


@dataclass
class TrainingHistory:
    """Per-epoch metrics of a ``fit`` run."""

    epochs: list[EpochRecord] = field(default_factory=list)

    @property
    def final(self) -> EpochRecord | None:
        return self.epochs[-1] if self.epochs else None

    def to_dict(self) -> dict[str, Any]:
        return {"epochs": [record.to_dict() for record in self.epochs]}


def is_correct(probability: float, label: int) -> bool:
    """Ties at the threshold count as fire."""
    return (probability >= FIRE_THRESHOLD) == (label == 1)


def _check_dataset(model: Model, dataset: Sequence[Sample]) -> None:
    if len(dataset) == 0:
        raise InputError("dataset is empty")
    for i, (image, label) in enumerate(dataset):
        if np.shape(image) != model.input_shape:
            raise DimensionError(
                f"sample {i} has shape {np.shape(image)}, model expects {model.input_shape}",
                axes=("sample",),
                expected=model.input_shape,
                actual=np.shape(image),
            )
        if label not in (0, 1):
            raise InputError(f"sample {i} has label {label!r}, expected 0 or 1")


def evaluate(model: Model, dataset: Sequence[Sample]) -> Metrics:
    """Mean BCE and accuracy of ``model`` over ``dataset``.

    Raises:
        InputError: If the dataset is empty.
    """
    _check_dataset(model, dataset)
    losses = []
    correct = 0
    for image, label in dataset:
        p = forward(model, image).probability
        losses.append(bce(label, p)[0])
        correct += is_correct(p, label)
    total = len(dataset)
    return Metrics(loss=math.fsum(losses) / total, accuracy=correct / total, correct=correct, total=total)


def _epoch_order(seed: int, epoch: int, n: int) -> np.ndarray:
    return np.random.default_rng([seed, epoch]).permutation(n)


def train_epoch(
    model: Model,
    dataset: Sequence[Sample],
    cfg: TrainConfig,
    epoch: int = 0,
    callbacks: Sequence[Any] = (),
) -> Metrics:
    """Run one epoch of plain mini-batch gradient descent, updating ``model`` in place.

    Every weight and bias moves by ``-learning_rate`` times the batch-mean
    gradient. The sample order depends only on ``cfg.seed`` and ``epoch``.
    Returned metrics are accumulated while training, each sample scored
    with the weights in effect when its batch was processed.

    Raises:
        InputError: If the dataset is empty or smaller than one batch.
        TrainingDivergenceError: If a batch produces a non-finite loss or gradient.
    """
    _check_dataset(model, dataset)
    if cfg.batch_size > len(dataset):
        raise InputError(f"batch_size {cfg.batch_size} exceeds dataset size {len(dataset)}")

    order = _epoch_order(cfg.seed, epoch, len(dataset))
    losses: list[float] = []
    correct = 0
    params = [array for _, array in model.parameters()]

    for batch_index, start in enumerate(range(0, len(order), cfg.batch_size)):
        batch = order[start : start + cfg.batch_size]
        grads = Gradients.zeros_like(model)
        batch_losses = []
        for idx in batch:
            image, label = dataset[int(idx)]
            cache = forward(model, image)
            p = cache.probability
            if not math.isfinite(p):
                raise TrainingDivergenceError(batch_index, p, epoch=epoch)
            loss, dloss_dp = bce(label, p)
            batch_losses.append(loss)
            correct += is_correct(p, label)
            grads += backward(model, cache, dloss_dp)

        batch_loss = math.fsum(batch_losses) / len(batch)
        if not math.isfinite(batch_loss) or not all(np.all(np.isfinite(g)) for g in grads.as_list()):
            raise TrainingDivergenceError(batch_index, batch_loss, epoch=epoch)
        if cfg.learning_rate > 0:
            step = cfg.learning_rate / len(batch)
            for param, grad in zip(params, grads.as_list(), strict=True):
                param -= step * grad
        losses.extend(batch_losses)
        logger.debug(f"epoch {epoch} batch {batch_index}: loss {batch_loss:.6f}")
        trigger_event(callbacks, TrainingEvent.BATCH_END, epoch, batch_index, batch_loss)

    total = len(dataset)
    return Metrics(loss=math.fsum(losses) / total, accuracy=correct / total, correct=correct, total=total)


def fit(
    model: Model,
    train: Sequence[Sample],
    cfg: TrainConfig,
    validation: Sequence[Sample] | None = None,
    callbacks: Sequence[Any] = (),
) -> TrainingHistory:
    """Train for ``cfg.epochs`` epochs, evaluating ``validation`` after each one."""
    history = TrainingHistory()
    for epoch in range(1, cfg.epochs + 1):
        trigger_event(callbacks, TrainingEvent.EPOCH_START, epoch)
        train_metrics = train_epoch(model, train, cfg, epoch=epoch, callbacks=callbacks)
        val_metrics = evaluate(model, validation) if validation else None
        record = EpochRecord(epoch=epoch, train=train_metrics, validation=val_metrics)
        history.epochs.append(record)
        summary = f"epoch {epoch}/{cfg.epochs}: loss {train_metrics.loss:.4f}, accuracy {train_metrics.accuracy:.4f}"
        if val_metrics is not None:
            summary += f", val_loss {val_metrics.loss:.4f}, val_accuracy {val_metrics.accuracy:.4f}"
        logger.info(summary)
        trigger_event(callbacks, TrainingEvent.EPOCH_END, epoch, train_metrics, val_metrics)
    return history
