"""Configuration schema for firecast runs using Pydantic models."""

from typing import Any, Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from firecast.common import constants


class ArchitectureConfig(BaseModel):
    """Shape of the five-layer classifier."""

    model_config = {"frozen": True, "extra": "forbid"}

    input_height: int = Field(default=constants.DEFAULT_INPUT_SHAPE[0], gt=0)
    input_width: int = Field(default=constants.DEFAULT_INPUT_SHAPE[1], gt=0)
    channels: int = Field(default=constants.DEFAULT_INPUT_SHAPE[2], gt=0)
    filters: int = Field(default=constants.DEFAULT_FILTERS, gt=0)
    kernel: int = Field(default=constants.DEFAULT_KERNEL, gt=0)
    pool_window: int = Field(default=constants.DEFAULT_POOL_WINDOW, gt=0)
    pool_stride: int | None = Field(default=None, gt=0)
    hidden_units: int = Field(default=constants.DEFAULT_HIDDEN_UNITS, gt=0)

    @model_validator(mode="after")
    def validate_extents(self):
        """Check that the kernel and pooling window fit the input."""
        if self.kernel > min(self.input_height, self.input_width):
            raise ValueError(
                f"kernel {self.kernel} exceeds input extent {self.input_height}x{self.input_width}"
            )
        conv_h = self.input_height - self.kernel + 1
        conv_w = self.input_width - self.kernel + 1
        if self.pool_window > min(conv_h, conv_w):
            raise ValueError(f"pool_window {self.pool_window} exceeds convolution output {conv_h}x{conv_w}")
        return self

    @property
    def input_spec(self) -> tuple[int, int, int]:
        """(height, width, channels)."""
        return (self.input_height, self.input_width, self.channels)


class TrainConfig(BaseModel):
    """Mini-batch SGD hyperparameters."""

    model_config = {"frozen": True, "extra": "forbid"}

    learning_rate: float = Field(default=constants.DEFAULT_LEARNING_RATE, ge=0)
    epochs: int = Field(default=constants.DEFAULT_EPOCHS, gt=0)
    batch_size: int = Field(default=constants.DEFAULT_BATCH_SIZE, gt=0)
    seed: int = Field(default=0, ge=0)
    validation_split: float = Field(default=0.2, ge=0, lt=1)


class LocalizerConfig(BaseModel):
    """Bright-pixel threshold used for fire localization."""

    model_config = {"frozen": True, "extra": "forbid"}

    quantile: float = Field(default=constants.DEFAULT_QUANTILE, gt=0, le=1)


class FcmConfig(BaseModel):
    """Fuzzy cognitive map dynamics settings.

    ``lambda`` is a Python keyword, so the attribute is ``lambda_`` while
    files and dictionaries use the ``lambda`` key. ``update_rule`` selects
    classic Kosko inference or the modified rule that adds each concept's
    own previous activity to its weighted input.
    """

    model_config = {"frozen": True, "extra": "forbid", "populate_by_name": True}

    lambda_: float = Field(default=1.0, alias="lambda", gt=0)
    allow_self_loops: bool = False
    eps: float = Field(default=1e-6, gt=0)
    max_iters: int = Field(default=100, ge=0)
    update_rule: Literal["kosko", "modified_kosko"] = "kosko"

    def to_dict(self) -> dict[str, Any]:
        return self.model_dump(by_alias=True)


class PipelineConfig(BaseModel):
    """Detection-to-scenario bridge settings.

    ``clamp`` holds the wildfire-frequency concept at its scenario value on
    every FCM step instead of letting the dynamics overwrite it.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    cap: int = Field(default=constants.DEFAULT_CAP, ge=1)
    concept: int | str = constants.WILDFIRE_CONCEPT_INDEX
    clamp: bool = False

    @field_validator("concept")
    @classmethod
    def validate_concept(cls, v):
        """Reject negative indices and blank names."""
        if isinstance(v, int) and v < 0:
            raise ValueError("concept index must be non-negative")
        if isinstance(v, str) and not v.strip():
            raise ValueError("concept name must not be empty")
        return v


class FirecastConfig(BaseModel):
    """Full run configuration, every section optional."""

    model_config = {"extra": "forbid"}

    architecture: ArchitectureConfig = ArchitectureConfig()
    train: TrainConfig = TrainConfig()
    localizer: LocalizerConfig = LocalizerConfig()
    fcm: FcmConfig = FcmConfig()
    pipeline: PipelineConfig = PipelineConfig()
