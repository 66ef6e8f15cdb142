"""Netpbm image reading and writing.

Grayscale PGM (``P2`` ASCII, ``P5`` binary) is the native format. Colour PPM
(``P3``, ``P6``) is accepted on load and reduced to luminance by channel
mean. Pixel values are kept as stored; ``maxval`` only bounds them.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from firecast.common.constants import MAX_PIXEL
from firecast.common.errors import ParseError
from firecast.vision.image import GrayImage

logger = logging.getLogger(__name__)

WHITESPACE = b" \t\n\r\v\f"
CHANNELS = {b"P2": 1, b"P5": 1, b"P3": 3, b"P6": 3}
BINARY = {b"P5", b"P6"}


class _Reader:
    """Cursor over the raw bytes of one file."""

    def __init__(self, data: bytes, path: str | None):
        self.data = data
        self.pos = 0
        self.path = path

    def error(self, message: str, offset: int | None = None) -> ParseError:
        return ParseError(message, path=self.path, offset=self.pos if offset is None else offset)

    def skip_space_and_comments(self) -> None:
        while self.pos < len(self.data):
            byte = self.data[self.pos : self.pos + 1]
            if byte == b"#":
                end = self.data.find(b"\n", self.pos)
                self.pos = len(self.data) if end < 0 else end + 1
            elif byte in WHITESPACE:
                self.pos += 1
            else:
                return

    def integer(self, what: str) -> tuple[int, int]:
        """Next decimal token as ``(value, start_offset)``."""
        self.skip_space_and_comments()
        start = self.pos
        while self.pos < len(self.data) and 0x30 <= self.data[self.pos] <= 0x39:
            self.pos += 1
        if self.pos == start:
            if start >= len(self.data):
                raise self.error(f"unexpected end of file while reading {what}")
            raise self.error(f"expected a decimal {what}")
        return int(self.data[start : self.pos]), start


def parse_pnm(data: bytes, path: str | None = None) -> GrayImage:
    """Parse PGM/PPM bytes into a grayscale image.

    Raises:
        ParseError: On a bad magic number, a malformed header, ``maxval``
            outside 1..255, a sample above ``maxval`` or a truncated payload.
    """
    reader = _Reader(data, path)
    magic = data[:2]
    if magic not in CHANNELS:
        raise reader.error(f"bad magic number {magic!r} (expected P2, P3, P5 or P6)", offset=0)
    reader.pos = 2
    channels = CHANNELS[magic]

    width, w_at = reader.integer("width")
    height, h_at = reader.integer("height")
    if width < 1:
        raise reader.error("width must be positive", offset=w_at)
    if height < 1:
        raise reader.error("height must be positive", offset=h_at)
    maxval, m_at = reader.integer("maxval")
    if not 1 <= maxval <= MAX_PIXEL:
        raise reader.error(f"maxval {maxval} is outside 1..{MAX_PIXEL}", offset=m_at)

    count = width * height * channels
    if magic in BINARY:
        if reader.pos >= len(data) or data[reader.pos] not in WHITESPACE:
            raise reader.error("expected a single whitespace byte before the binary payload")
        start = reader.pos + 1
        payload = data[start : start + count]
        if len(payload) < count:
            raise reader.error(f"payload truncated: {len(payload)} of {count} bytes", offset=start + len(payload))
        samples = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)
        over = np.flatnonzero(samples > maxval)
        if over.size:
            raise reader.error(f"sample {int(samples[over[0]])} exceeds maxval {maxval}", offset=start + int(over[0]))
    else:
        values = []
        for _ in range(count):
            reader.skip_space_and_comments()
            if reader.pos >= len(data):
                raise reader.error(f"payload truncated: {len(values)} of {count} samples")
            value, at = reader.integer("sample")
            if value > maxval:
                raise reader.error(f"sample {value} exceeds maxval {maxval}", offset=at)
            values.append(value)
        samples = np.array(values, dtype=np.int64)

    if channels == 1:
        return GrayImage(samples.reshape(height, width))
    return GrayImage.from_rgb(samples.reshape(height, width, 3))


def pgm_load(file_path: str | Path) -> GrayImage:
    """Read a PGM (or PPM) file."""
    path = Path(file_path)
    return parse_pnm(path.read_bytes(), path=str(path))


def pgm_bytes(image: GrayImage) -> bytes:
    """Binary ``P5`` encoding with ``maxval`` 255."""
    header = f"P5\n{image.width} {image.height}\n{MAX_PIXEL}\n".encode("ascii")
    return header + image.pixels.tobytes(order="C")


def pgm_save(image: GrayImage, file_path: str | Path) -> Path:
    """Write ``image`` as binary PGM."""
    path = Path(file_path)
    path.write_bytes(pgm_bytes(image))
    logger.debug(f"Wrote {image.width}x{image.height} image to {path}")
    return path
