"""File formats: PGM images, labelled datasets, synthetic data and model files."""

from firecast.io.dataset import DatasetManifest, dataset_load, dataset_manifest, split_dataset
from firecast.io.model_file import model_from_dict, model_load, model_save, model_to_dict
from firecast.io.pgm import parse_pnm, pgm_load, pgm_save
from firecast.io.synth import synth_fire_image, synth_generate, synth_nofire_image

__all__ = [
    "DatasetManifest",
    "dataset_load",
    "dataset_manifest",
    "model_from_dict",
    "model_load",
    "model_save",
    "model_to_dict",
    "parse_pnm",
    "pgm_load",
    "pgm_save",
    "split_dataset",
    "synth_fire_image",
    "synth_generate",
    "synth_nofire_image",
]
