"""Tensor helpers.

A tensor is a row-major ``float64`` numpy array whose elements are all
finite. These helpers convert and validate inputs at module boundaries.
"""

from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from firecast.common.errors import DimensionError, DomainError

Tensor = NDArray[np.float64]


def as_tensor(values: ArrayLike, shape: Sequence[int] | None = None, name: str = "tensor") -> Tensor:
    """Return ``values`` as a finite float64 array, optionally reshaped.

    Raises:
        DimensionError: If ``shape`` is given and the element count differs.
        DomainError: If any element is NaN or infinite.
    """
    array = np.asarray(values, dtype=np.float64)
    if shape is not None:
        shape = tuple(int(d) for d in shape)
        if any(d <= 0 for d in shape):
            raise DimensionError(f"{name} shape {shape} has non-positive dimensions", expected=shape)
        if array.size != int(np.prod(shape)):
            raise DimensionError(
                f"{name} has {array.size} elements but shape {shape} needs {int(np.prod(shape))}",
                expected=shape,
                actual=array.shape,
            )
        array = array.reshape(shape)
    check_finite(array, name)
    return array


def check_finite(array: np.ndarray, name: str = "tensor") -> None:
    """Raise ``DomainError`` if ``array`` holds NaN or infinity."""
    if not np.all(np.isfinite(array)):
        bad = int(np.flatnonzero(~np.isfinite(array))[0])
        raise DomainError(f"{name}[{bad}]", float(array.reshape(-1)[bad]), "finite reals")


def require_shape(array: np.ndarray, expected: Sequence[int], name: str, axes: Sequence[str]) -> None:
    """Raise ``DimensionError`` naming every axis whose extent differs."""
    expected = tuple(expected)
    if array.ndim != len(expected):
        raise DimensionError(
            f"{name} has rank {array.ndim}, expected rank {len(expected)}",
            axes=axes,
            expected=expected,
            actual=array.shape,
        )
    bad = [axis for axis, got, want in zip(axes, array.shape, expected, strict=True) if want is not None and got != want]
    if bad:
        raise DimensionError(
            f"{name} shape {array.shape} does not match expected {expected}",
            axes=bad,
            expected=expected,
            actual=array.shape,
        )
