"""Seeded synthetic fire / no-fire image generator.

Every image is dark noise uniform in [0, 60]. Fire images add one
axis-aligned rectangle of values uniform in [200, 255] whose sides are
between 3 and ``image_size // 2`` pixels, so the two classes are separable
by brightness.
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from firecast.common.errors import InputError
from firecast.common.results import BoundingBox
from firecast.config.utils import visible_files
from firecast.io.dataset import CLASS_DIRS, DatasetManifest
from firecast.io.pgm import pgm_save
from firecast.vision.image import GrayImage

logger = logging.getLogger(__name__)

NOISE_RANGE = (0, 60)
BLOB_RANGE = (200, 255)
MIN_BLOB_SIDE = 3


def synth_nofire_image(rng: np.random.Generator, size: int) -> GrayImage:
    return GrayImage(rng.integers(NOISE_RANGE[0], NOISE_RANGE[1], size=(size, size), endpoint=True))


def synth_fire_image(rng: np.random.Generator, size: int) -> tuple[GrayImage, BoundingBox]:
    """Noise image plus one bright rectangle; returns the image and the rectangle."""
    pixels = rng.integers(NOISE_RANGE[0], NOISE_RANGE[1], size=(size, size), endpoint=True)
    max_side = size // 2
    width, height = (int(v) for v in rng.integers(MIN_BLOB_SIDE, max_side, size=2, endpoint=True))
    x0 = int(rng.integers(0, size - width, endpoint=True))
    y0 = int(rng.integers(0, size - height, endpoint=True))
    pixels[y0 : y0 + height, x0 : x0 + width] = rng.integers(
        BLOB_RANGE[0], BLOB_RANGE[1], size=(height, width), endpoint=True
    )
    box = BoundingBox(x_min=x0, y_min=y0, x_max=x0 + width - 1, y_max=y0 + height - 1)
    return GrayImage(pixels), box


def synth_generate(out_dir: str | Path, count: int, seed: int, image_size: int = 32) -> DatasetManifest:
    """Write ``count // 2`` fire and ``count // 2`` nofire PGM files under ``out_dir``.

    Output depends only on the arguments, so equal seeds give byte-identical
    trees. Class directories that already hold files are refused rather than
    merged into.

    Raises:
        InputError: If ``count`` is odd or below 2, ``image_size`` is too small
            for a blob, or ``fire/`` or ``nofire/`` is not empty.
    """
    if count < 2 or count % 2:
        raise InputError(f"count must be an even number of at least 2, got {count}")
    if image_size // 2 < MIN_BLOB_SIDE:
        raise InputError(f"image_size must be at least {2 * MIN_BLOB_SIDE}, got {image_size}")

    root = Path(out_dir)
    for name, _ in CLASS_DIRS:
        directory = root / name
        if directory.is_dir() and visible_files(directory):
            raise InputError(f"{directory} already contains files; synthesize into an empty directory")
    rng = np.random.default_rng(seed)
    per_class = count // 2
    width = max(4, len(str(per_class - 1)))
    written: dict[str, list[Path]] = {}
    for name, label in CLASS_DIRS:
        directory = root / name
        directory.mkdir(parents=True, exist_ok=True)
        written[name] = []
        for i in range(per_class):
            image = synth_fire_image(rng, image_size)[0] if label == 1 else synth_nofire_image(rng, image_size)
            written[name].append(pgm_save(image, directory / f"{name}_{i:0{width}d}.pgm"))

    logger.info(f"Wrote {count} synthetic {image_size}x{image_size} images to {root} (seed {seed})")
    return DatasetManifest(root=root, fire=tuple(written["fire"]), nofire=tuple(written["nofire"]))
