"""Common shared components of firecast.

This package holds constants, exception types and result records used
throughout the library. Modules here must not import higher-level packages.
"""

from firecast.common.errors import (
    DimensionError,
    DomainError,
    InputError,
    MapValidationError,
    NumericError,
    ParseError,
    SchemaError,
    TrainingDivergenceError,
    UnknownTermError,
    VersionError,
)
from firecast.common.results import BoundingBox, Detection, Metrics

__all__ = [
    "BoundingBox",
    "Detection",
    "DimensionError",
    "DomainError",
    "InputError",
    "MapValidationError",
    "Metrics",
    "NumericError",
    "ParseError",
    "SchemaError",
    "TrainingDivergenceError",
    "UnknownTermError",
    "VersionError",
]
