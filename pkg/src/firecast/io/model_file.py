"""Versioned JSON persistence for the five-layer classifier.

Layout::

    {"version": 1,
     "input_spec": [h, w, c],
     "layers": [
       {"type": "conv2d", "filters": F, "kernel": k, "weights": [...], "bias": [...]},
       {"type": "maxpool", "window": 2, "stride": 2},
       {"type": "flatten"},
       {"type": "dense", "units": 128, "activation": "relu", "weights": [...], "bias": [...]},
       {"type": "dense", "units": 1, "activation": "sigmoid", "weights": [...], "bias": [...]}]}

Weight arrays are flattened row-major. Floats are written with Python's
shortest round-trip representation, so loading reproduces every bit.
"""

from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any

import numpy as np

from firecast.common.constants import MODEL_FILE_VERSION
from firecast.common.errors import DimensionError, SchemaError, VersionError
from firecast.config.utils import resolve_path
from firecast.nn.layers import ConvLayer, DenseLayer, Flatten, PoolSpec
from firecast.nn.model import Model

logger = logging.getLogger(__name__)

LAYER_TYPES = ("conv2d", "maxpool", "flatten", "dense", "dense")


def _floats(array: np.ndarray) -> list[float]:
    return [float(v) for v in array.reshape(-1)]


def model_to_dict(model: Model) -> dict[str, Any]:
    conv, pool, _, hidden, output = model.layers
    return {
        "version": MODEL_FILE_VERSION,
        "input_spec": list(model.input_spec),
        "layers": [
            {
                "type": "conv2d",
                "filters": conv.filter_count,
                "kernel": conv.kernel_size,
                "weights": _floats(conv.weights),
                "bias": _floats(conv.bias),
            },
            {"type": "maxpool", "window": pool.window, "stride": pool.step},
            {"type": "flatten"},
            *(
                {
                    "type": "dense",
                    "units": layer.out_units,
                    "activation": layer.activation,
                    "weights": _floats(layer.weights),
                    "bias": _floats(layer.bias),
                }
                for layer in (hidden, output)
            ),
        ],
    }


def _positive_int(layer: dict[str, Any], key: str, position: int) -> int:
    value = layer.get(key)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise SchemaError(f"layer {position} ({layer.get('type')}) needs a positive integer '{key}', got {value!r}")
    return value


def _array(layer: dict[str, Any], key: str, shape: tuple[int, ...], position: int) -> np.ndarray:
    values = layer.get(key)
    if not isinstance(values, list):
        raise SchemaError(f"layer {position} ({layer['type']}) is missing its '{key}' list")
    expected = math.prod(shape)
    if len(values) != expected:
        raise SchemaError(
            f"layer {position} ({layer['type']}) has {len(values)} {key} values, expected {expected} for shape {shape}"
        )
    try:
        array = np.array(values, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise SchemaError(f"layer {position} ({layer['type']}) {key} are not numbers: {e}")
    if not np.all(np.isfinite(array)):
        raise SchemaError(f"layer {position} ({layer['type']}) {key} contain non-finite values")
    return array.reshape(shape)


def model_from_dict(data: dict[str, Any]) -> Model:
    """Rebuild a model, checking the version and every declared dimension.

    Raises:
        VersionError: If ``version`` is not the supported one.
        SchemaError: If the layer sequence or any array size is inconsistent.
    """
    if not isinstance(data, dict):
        raise SchemaError("model file must contain a JSON object")
    if data.get("version") != MODEL_FILE_VERSION:
        raise VersionError(data.get("version"), MODEL_FILE_VERSION)

    spec = data.get("input_spec")
    if not (isinstance(spec, list) and len(spec) == 3 and all(isinstance(d, int) and d > 0 for d in spec)):
        raise SchemaError(f"input_spec must be [height, width, channels] of positive ints, got {spec!r}")
    h, w, c = spec

    layers = data.get("layers")
    if not isinstance(layers, list) or not all(isinstance(layer, dict) for layer in layers):
        raise SchemaError("layers must be a list of objects")
    types = tuple(layer.get("type") for layer in layers)
    if types != LAYER_TYPES:
        raise SchemaError(f"layers must be {list(LAYER_TYPES)}, got {list(types)}")
    conv_raw, pool_raw, _, hidden_raw, output_raw = layers

    try:
        filters = _positive_int(conv_raw, "filters", 0)
        kernel = _positive_int(conv_raw, "kernel", 0)
        conv = ConvLayer(
            weights=_array(conv_raw, "weights", (filters, c, kernel, kernel), 0),
            bias=_array(conv_raw, "bias", (filters,), 0),
        )
        window = _positive_int(pool_raw, "window", 1)
        stride = _positive_int(pool_raw, "stride", 1) if "stride" in pool_raw else None
        pool = PoolSpec(window=window, stride=stride)
        if kernel > min(h, w):
            raise SchemaError(f"kernel {kernel} exceeds input extent {h}x{w}")
        conv_shape = conv.output_shape((c, h, w))
        if window > min(conv_shape[1:]):
            raise SchemaError(f"pool window {window} exceeds convolution output {conv_shape[1]}x{conv_shape[2]}")
        in_units = Flatten().output_shape(pool.output_shape(conv_shape))[0]

        dense = []
        for position, raw in ((3, hidden_raw), (4, output_raw)):
            units = _positive_int(raw, "units", position)
            dense.append(
                DenseLayer(
                    weights=_array(raw, "weights", (units, in_units), position),
                    bias=_array(raw, "bias", (units,), position),
                    activation=raw.get("activation", "relu"),
                )
            )
            in_units = units
        return Model(input_spec=(h, w, c), conv=conv, pool=pool, hidden=dense[0], output=dense[1])
    except DimensionError as e:
        raise SchemaError(f"inconsistent model dimensions: {e}")
    except SchemaError:
        raise
    except ValueError as e:
        raise SchemaError(f"invalid model file: {e}")


def model_save(model: Model, file_path: str | Path) -> Path:
    """Write ``model`` as a version-1 JSON model file."""
    path = Path(file_path)
    path.write_text(json.dumps(model_to_dict(model)) + "\n")
    logger.info(f"Saved model ({model.parameter_count()} parameters) to {path}")
    return path


def model_load(file_path: str | Path) -> Model:
    """Read a model file written by :func:`model_save`."""
    path = resolve_path(file_path, must_exist=True, error_prefix="Model file")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}")
    model = model_from_dict(data)
    logger.info(f"Loaded model from {path}")
    return model
