"""Configuration schema and utilities package."""

from firecast.config.loader import config_from_dict, load_config
from firecast.config.schema import (
    ArchitectureConfig,
    FcmConfig,
    FirecastConfig,
    LocalizerConfig,
    PipelineConfig,
    TrainConfig,
)
from firecast.config.utils import resolve_path

__all__ = [
    "ArchitectureConfig",
    "FcmConfig",
    "FirecastConfig",
    "LocalizerConfig",
    "PipelineConfig",
    "TrainConfig",
    "config_from_dict",
    "load_config",
    "resolve_path",
]
