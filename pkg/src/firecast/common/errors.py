"""Exception types raised across firecast.

Every class subclasses a builtin exception so callers that only care about
the broad category can keep catching ``ValueError`` or ``ArithmeticError``.
The CLI maps ``ValueError`` to exit code 3 and ``ArithmeticError`` to 4.
"""

from __future__ import annotations

from collections.abc import Sequence


class DimensionError(ValueError):
    """Raised when tensor shapes do not line up."""

    def __init__(self, message: str, axes: Sequence[str] = (), expected=None, actual=None):
        self.axes = tuple(axes)
        self.expected = expected
        self.actual = actual
        detail = f" (axes: {', '.join(self.axes)})" if self.axes else ""
        super().__init__(f"{message}{detail}")


class DomainError(ValueError):
    """Raised when a scalar argument lies outside its allowed domain."""

    def __init__(self, name: str, value: float | str, domain: str):
        self.name = name
        self.value = value
        self.domain = domain
        super().__init__(f"{name}={value!r} is outside {domain}")


class InputError(ValueError):
    """Raised for empty or malformed inputs (datasets, windows, indices)."""


class ParseError(ValueError):
    """Raised when an image file cannot be parsed."""

    def __init__(self, message: str, path: str | None = None, offset: int | None = None):
        self.path = path
        self.offset = offset
        where = f"{path}: " if path else ""
        at = f" at byte {offset}" if offset is not None else ""
        super().__init__(f"{where}{message}{at}")


class SchemaError(ValueError):
    """Raised when a model file is structurally invalid."""


class VersionError(SchemaError):
    """Raised when a model file declares an unsupported version."""

    def __init__(self, version, supported: int):
        self.version = version
        self.supported = supported
        super().__init__(f"Unsupported model file version {version!r} (expected {supported})")


class MapValidationError(ValueError):
    """Raised when a cognitive matrix violates its weight rules."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None, value: float | None = None):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(message)


class UnknownTermError(ValueError):
    """Raised when a linguistic term is missing from the scale."""

    def __init__(self, term: str, available: Sequence[str]):
        self.term = term
        self.available = tuple(available)
        super().__init__(f"Unknown linguistic term '{term}'. Available terms: {', '.join(self.available)}")


class TrainingDivergenceError(ArithmeticError):
    """Raised when a training batch produces a non-finite loss."""

    def __init__(self, batch_index: int, loss: float, epoch: int | None = None):
        self.batch_index = batch_index
        self.loss = loss
        self.epoch = epoch
        where = f"epoch {epoch}, " if epoch is not None else ""
        super().__init__(f"Training diverged at {where}batch {batch_index}: loss={loss!r}")


class NumericError(ArithmeticError):
    """Raised when a numeric probe (e.g. gradient check) hits a non-finite value."""
