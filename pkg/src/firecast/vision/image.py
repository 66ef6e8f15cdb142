"""Grayscale image container."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from firecast.common.constants import MAX_PIXEL, PIXEL_SCALE
from firecast.common.errors import DimensionError, DomainError
from firecast.nn.tensor import Tensor


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Row-major luminance image with values in [0, 255].

    ``pixels`` has shape (height, width) and dtype uint8.
    """

    pixels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.pixels)
        if raw.ndim != 2 or raw.shape[0] == 0 or raw.shape[1] == 0:
            raise DimensionError(f"image pixels must be a non-empty 2-D array, got shape {raw.shape}", axes=("rank",))
        if not (np.issubdtype(raw.dtype, np.integer) or np.issubdtype(raw.dtype, np.floating)):
            raise DomainError("pixel dtype", str(raw.dtype), "integer or float")
        if np.issubdtype(raw.dtype, np.floating):
            # Float input must already hold whole numbers; NaN and inf fail this too
            off = ~(np.isfinite(raw) & (raw == np.rint(raw)))
            if off.any():
                raise DomainError("pixel", float(raw[off][0]), "integers in [0, 255]")
        if raw.min() < 0 or raw.max() > MAX_PIXEL:
            bad = raw.min() if raw.min() < 0 else raw.max()
            raise DomainError("pixel", float(bad), "[0, 255]")
        object.__setattr__(self, "pixels", raw.astype(np.uint8, copy=True))

    @classmethod
    def from_values(cls, width: int, height: int, values: ArrayLike) -> GrayImage:
        """Build from a flat row-major sequence of ``width * height`` values."""
        flat = np.asarray(values)
        if flat.size != width * height:
            raise DimensionError(
                f"{flat.size} pixel values do not fill a {width}x{height} image",
                axes=("pixels",),
                expected=(height, width),
            )
        return cls(flat.reshape(height, width))

    @classmethod
    def from_rgb(cls, rgb: ArrayLike) -> GrayImage:
        """Reduce an (height, width, 3) colour array to luminance by channel mean."""
        array = np.asarray(rgb, dtype=np.float64)
        if array.ndim != 3 or array.shape[2] != 3:
            raise DimensionError(f"colour image must have shape (H, W, 3), got {array.shape}", axes=("channels",))
        return cls(np.rint(array.mean(axis=2)))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def to_tensor(self) -> Tensor:
        """Scale into [0, 1] as a single-channel [1, H, W] tensor."""
        return (self.pixels.astype(np.float64) / PIXEL_SCALE)[None, :, :]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self) -> str:
        return f"GrayImage(width={self.width}, height={self.height})"
