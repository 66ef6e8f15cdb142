"""Result records produced by training, evaluation and detection.

These classes have no dependencies beyond the common package so that the
nn, vision and pipeline packages can all share them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from firecast.common.constants import LABEL_FIRE, LABEL_NO_FIRE


@dataclass(frozen=True)
class Metrics:
    """Mean binary cross-entropy and accuracy over a dataset.

    Attributes:
        loss: Mean per-sample BCE.
        accuracy: correct / total.
        correct: Number of correctly classified samples.
        total: Number of samples evaluated.
    """

    loss: float
    accuracy: float
    correct: int = 0
    total: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"loss": self.loss, "accuracy": self.accuracy, "correct": self.correct, "total": self.total}


@dataclass(frozen=True)
class BoundingBox:
    """Inclusive pixel rectangle."""

    x_min: int
    y_min: int
    x_max: int
    y_max: int

    @property
    def width(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def height(self) -> int:
        return self.y_max - self.y_min + 1

    @property
    def area_px(self) -> int:
        """Inclusive pixel count of the rectangle."""
        return self.width * self.height

    def contains(self, x: int, y: int) -> bool:
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def to_dict(self) -> dict[str, int]:
        return {"x_min": self.x_min, "y_min": self.y_min, "x_max": self.x_max, "y_max": self.y_max}


@dataclass(frozen=True)
class Detection:
    """Classification verdict with optional fire rectangle.

    ``bbox`` and ``area_px`` are present exactly when ``label`` is fire.
    """

    label: str
    probability: float
    bbox: BoundingBox | None = None
    area_px: int | None = None

    def __post_init__(self):
        if self.label not in (LABEL_FIRE, LABEL_NO_FIRE):
            raise ValueError(f"Unknown detection label '{self.label}'")
        has_box = self.bbox is not None and self.area_px is not None
        if (self.label == LABEL_FIRE) != has_box:
            raise ValueError("bbox and area_px must be present if and only if label is 'fire'")
        if has_box and self.area_px != self.bbox.area_px:
            raise ValueError(f"area_px {self.area_px} does not match bbox area {self.bbox.area_px}")

    @property
    def is_fire(self) -> bool:
        return self.label == LABEL_FIRE

    def to_dict(self) -> dict[str, Any]:
        """Serialize with the field names used by the CLI output."""
        data: dict[str, Any] = {"label": self.label, "probability": self.probability}
        if self.bbox is not None:
            data["bbox"] = self.bbox.to_dict()
            data["area_px"] = self.area_px
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Detection:
        bbox = BoundingBox(**data["bbox"]) if data.get("bbox") else None
        return cls(
            label=data["label"],
            probability=float(data["probability"]),
            bbox=bbox,
            area_px=data.get("area_px"),
        )
