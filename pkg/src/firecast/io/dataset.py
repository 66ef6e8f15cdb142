"""Labelled image folders: ``fire/`` (label 1) and ``nofire/`` (label 0)."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from firecast.common.errors import DimensionError, InputError, ParseError
from firecast.config.utils import visible_files
from firecast.io.pgm import pgm_load
from firecast.nn.training import Sample
from firecast.vision.image import GrayImage

logger = logging.getLogger(__name__)

CLASS_DIRS: tuple[tuple[str, int], ...] = (("fire", 1), ("nofire", 0))


@dataclass(frozen=True)
class DatasetManifest:
    """Files of a labelled dataset directory in load order."""

    root: Path
    fire: tuple[Path, ...]
    nofire: tuple[Path, ...]

    @property
    def files(self) -> list[tuple[Path, int]]:
        return [(path, 1) for path in self.fire] + [(path, 0) for path in self.nofire]

    def __len__(self) -> int:
        return len(self.fire) + len(self.nofire)

    def to_dict(self) -> dict[str, Any]:
        return {
            "root": str(self.root),
            "fire": [path.name for path in self.fire],
            "nofire": [path.name for path in self.nofire],
        }


def _class_files(directory: Path) -> tuple[Path, ...]:
    if not directory.is_dir():
        raise InputError(f"missing class directory {directory}")
    files = tuple(visible_files(directory))
    if not files:
        raise InputError(f"class directory {directory} is empty")
    return files


def dataset_manifest(root: str | Path) -> DatasetManifest:
    """List both class directories, files sorted lexicographically by name.

    Raises:
        InputError: If a class directory is missing or empty.
    """
    root = Path(root)
    fire, nofire = (_class_files(root / name) for name, _ in CLASS_DIRS)
    return DatasetManifest(root=root, fire=fire, nofire=nofire)


def load_image(path: Path) -> GrayImage:
    try:
        return pgm_load(path)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), path=str(path))


def dataset_load(root: str | Path, image_size: tuple[int, int] | None = None) -> list[Sample]:
    """Load every image under ``root`` as ``([1, H, W] tensor, label)`` samples.

    Images are not resampled: all must share one size, ``image_size`` as
    (height, width) when given, otherwise the size of the first file.

    Raises:
        InputError: If a class directory is missing or empty.
        ParseError: If a file is not a valid image (names the file).
        DimensionError: If an image has the wrong size (names the file).
    """
    manifest = dataset_manifest(root)
    expected = tuple(image_size) if image_size is not None else None
    samples: list[Sample] = []
    for path, label in manifest.files:
        image = load_image(path)
        size = (image.height, image.width)
        if expected is None:
            expected = size
        elif size != expected:
            raise DimensionError(
                f"{path}: image is {size[0]}x{size[1]}, expected {expected[0]}x{expected[1]}",
                axes=("height", "width"),
                expected=expected,
                actual=size,
            )
        samples.append((image.to_tensor(), label))
    logger.info(f"Loaded {len(manifest.fire)} fire and {len(manifest.nofire)} nofire images from {manifest.root}")
    return samples


def split_dataset(
    samples: Sequence[Sample], validation_split: float, seed: int
) -> tuple[list[Sample], list[Sample]]:
    """Seeded shuffle, then hold out ``round(validation_split * n)`` samples.

    A zero split returns every sample for training and an empty held-out set.
    """
    if not 0.0 <= validation_split < 1.0:
        raise InputError(f"validation_split must be in [0, 1), got {validation_split}")
    n = len(samples)
    order = np.random.default_rng(seed).permutation(n)
    held = round(validation_split * n)
    if held >= n:
        raise InputError(f"validation split {validation_split} leaves no training samples out of {n}")
    validation = [samples[int(i)] for i in order[:held]]
    train = [samples[int(i)] for i in order[held:]]
    return train, validation
