"""Fire localization from the brightest pixels of an image.

The fire rectangle spans the extreme coordinates of the brightest pixels on
each axis, and its area is the inclusive pixel count of that rectangle.
"Brightest" means luminance at or above the nearest-rank quantile of the
image's luminance distribution.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable

import numpy as np

from firecast.common.constants import DEFAULT_QUANTILE, FIRE_THRESHOLD, LABEL_FIRE, LABEL_NO_FIRE
from firecast.common.errors import DomainError, InputError
from firecast.common.results import BoundingBox, Detection
from firecast.nn.model import Model, model_predict
from firecast.vision.image import GrayImage

logger = logging.getLogger(__name__)


def brightness_threshold(image: GrayImage, quantile: float) -> int:
    """Nearest-rank quantile of the image's luminance values."""
    if not (0.0 < quantile <= 1.0):
        raise DomainError("quantile", quantile, "(0, 1]")
    values = np.sort(image.pixels, axis=None)
    rank = max(1, math.ceil(quantile * values.size))
    return int(values[rank - 1])


def bright_mask(image: GrayImage, quantile: float) -> np.ndarray:
    """Boolean (height, width) mask of pixels at or above the quantile."""
    return image.pixels >= brightness_threshold(image, quantile)


def threshold_bright(image: GrayImage, quantile: float = DEFAULT_QUANTILE) -> set[tuple[int, int]]:
    """Coordinates ``(x, y)`` of every pixel at or above the quantile.

    Never empty: the global maximum always qualifies.
    """
    ys, xs = np.nonzero(bright_mask(image, quantile))
    return {(int(x), int(y)) for x, y in zip(xs, ys, strict=True)}


def bounding_box(bright: Iterable[tuple[int, int]]) -> BoundingBox:
    """Smallest inclusive rectangle covering every coordinate."""
    points = list(bright)
    if not points:
        raise InputError("cannot bound an empty set of pixels")
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    return BoundingBox(x_min=min(xs), y_min=min(ys), x_max=max(xs), y_max=max(ys))


def detect_fire(model: Model, image: GrayImage, quantile: float = DEFAULT_QUANTILE) -> Detection:
    """Classify ``image`` and, when it is fire, attach the bright-pixel rectangle.

    Raises:
        DimensionError: If the image does not match the model's input.
        DomainError: If ``quantile`` is outside (0, 1].
    """
    if not (0.0 < quantile <= 1.0):
        raise DomainError("quantile", quantile, "(0, 1]")
    probability = model_predict(model, image.to_tensor())
    if probability < FIRE_THRESHOLD:
        return Detection(label=LABEL_NO_FIRE, probability=probability)
    box = bounding_box(threshold_bright(image, quantile))
    logger.debug(f"fire at {box.to_dict()} (p={probability:.4f})")
    return Detection(label=LABEL_FIRE, probability=probability, bbox=box, area_px=box.area_px)
