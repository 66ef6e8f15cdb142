"""The five-layer wildfire classifier.

conv -> max pool -> flatten -> dense(relu) -> dense(sigmoid, 1 unit)
"""

from __future__ import annotations

import copy
import logging
import math
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from firecast.common.errors import DimensionError
from firecast.config.schema import ArchitectureConfig
from firecast.nn.layers import (
    ConvLayer,
    DenseLayer,
    Flatten,
    PoolIndex,
    PoolSpec,
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    flatten_backward,
    flatten_forward,
    maxpool2d_backward,
    maxpool2d_forward,
)
from firecast.nn.tensor import Tensor

logger = logging.getLogger(__name__)

PARAMETER_NAMES = (
    "conv.weights",
    "conv.bias",
    "hidden.weights",
    "hidden.bias",
    "output.weights",
    "output.bias",
)


@dataclass
class Model:
    """Ordered layer stack plus the expected input shape.

    Attributes:
        input_spec: (height, width, channels) of accepted images.
        conv: Convolutional layer.
        pool: Max-pooling specification.
        hidden: Dense ReLU layer (128 units in the reference architecture).
        output: Dense sigmoid layer with a single unit.
    """

    input_spec: tuple[int, int, int]
    conv: ConvLayer
    pool: PoolSpec
    hidden: DenseLayer
    output: DenseLayer

    def __post_init__(self):
        self.input_spec = tuple(int(d) for d in self.input_spec)
        self._validate_stack()

    def _validate_stack(self) -> None:
        h, w, c = self.input_spec
        if c != self.conv.in_channels:
            raise DimensionError(
                f"input_spec has {c} channels but the convolution expects {self.conv.in_channels}",
                axes=("channels",),
            )
        if self.conv.kernel_size > min(h, w):
            raise DimensionError(
                f"kernel {self.conv.kernel_size} exceeds input extent {h}x{w}", axes=("height", "width")
            )
        conv_shape = self.conv.output_shape(self.input_shape)
        if self.pool.window > min(conv_shape[1:]):
            raise DimensionError(
                f"pool window {self.pool.window} exceeds convolution output {conv_shape}", axes=("height", "width")
            )
        flat = Flatten().output_shape(self.pool.output_shape(conv_shape))[0]
        if self.hidden.in_units != flat:
            raise DimensionError(
                f"hidden layer expects {self.hidden.in_units} inputs but flatten produces {flat}",
                axes=("in_units",),
            )
        if self.hidden.activation != "relu" or self.output.activation != "sigmoid":
            raise ValueError("reference architecture needs a relu hidden layer and a sigmoid output layer")
        if self.output.in_units != self.hidden.out_units or self.output.out_units != 1:
            raise DimensionError(
                f"output layer must map {self.hidden.out_units} units to 1, got weights {self.output.weights.shape}",
                axes=("out_units",),
            )

    @property
    def input_shape(self) -> tuple[int, int, int]:
        """Tensor layout [C, H, W] of accepted images."""
        h, w, c = self.input_spec
        return (c, h, w)

    @property
    def layers(self) -> list:
        return [self.conv, self.pool, Flatten(), self.hidden, self.output]

    def parameters(self) -> Iterator[tuple[str, Tensor]]:
        """Yield ``(name, array)`` for every trainable array, in a fixed order."""
        yield "conv.weights", self.conv.weights
        yield "conv.bias", self.conv.bias
        yield "hidden.weights", self.hidden.weights
        yield "hidden.bias", self.hidden.bias
        yield "output.weights", self.output.weights
        yield "output.bias", self.output.bias

    def parameter_count(self) -> int:
        return sum(array.size for _, array in self.parameters())

    def copy(self) -> Model:
        return copy.deepcopy(self)


@dataclass
class ForwardCache:
    """Intermediate values kept for the backward pass."""

    image: Tensor
    conv_out: Tensor
    pool_index: PoolIndex
    pooled_shape: tuple[int, ...]
    flat: Tensor
    hidden_out: Tensor
    probability: float


@dataclass
class Gradients:
    """Parameter gradients laid out like ``Model.parameters()``."""

    conv_weights: Tensor
    conv_bias: Tensor
    hidden_weights: Tensor
    hidden_bias: Tensor
    output_weights: Tensor
    output_bias: Tensor
    image: Tensor | None = None

    def as_list(self) -> list[Tensor]:
        return [
            self.conv_weights,
            self.conv_bias,
            self.hidden_weights,
            self.hidden_bias,
            self.output_weights,
            self.output_bias,
        ]

    def __iadd__(self, other: Gradients) -> Gradients:
        for mine, theirs in zip(self.as_list(), other.as_list(), strict=True):
            mine += theirs
        return self

    @classmethod
    def zeros_like(cls, model: Model) -> Gradients:
        return cls(*(np.zeros_like(array) for _, array in model.parameters()))


def _glorot(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int, fan_out: int) -> Tensor:
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def init_model(arch: ArchitectureConfig | None = None, seed: int = 0) -> Model:
    """Build the reference architecture with seeded Glorot-uniform weights.

    Weights are drawn uniformly from [-s, s] with s = sqrt(6 / (fan_in + fan_out));
    biases start at zero.

    Args:
        arch: Layer dimensions; defaults to 32x32x1 input, 8 filters of 3x3,
            2x2 pooling and 128 hidden units.
        seed: Seed for the weight generator.

    Returns:
        A freshly initialized model.
    """
    arch = arch or ArchitectureConfig()
    rng = np.random.default_rng(seed)
    k, c, f = arch.kernel, arch.channels, arch.filters
    conv = ConvLayer(
        weights=_glorot(rng, (f, c, k, k), fan_in=c * k * k, fan_out=f * k * k),
        bias=np.zeros(f),
    )
    pool = PoolSpec(window=arch.pool_window, stride=arch.pool_stride)
    conv_shape = conv.output_shape((c, arch.input_height, arch.input_width))
    flat = Flatten().output_shape(pool.output_shape(conv_shape))[0]
    hidden = DenseLayer(
        weights=_glorot(rng, (arch.hidden_units, flat), fan_in=flat, fan_out=arch.hidden_units),
        bias=np.zeros(arch.hidden_units),
        activation="relu",
    )
    output = DenseLayer(
        weights=_glorot(rng, (1, arch.hidden_units), fan_in=arch.hidden_units, fan_out=1),
        bias=np.zeros(1),
        activation="sigmoid",
    )
    model = Model(input_spec=arch.input_spec, conv=conv, pool=pool, hidden=hidden, output=output)
    logger.debug(f"Initialized model with {model.parameter_count()} parameters (seed {seed})")
    return model


def _check_image(model: Model, image: Tensor) -> None:
    if image.shape != model.input_shape:
        axes = [
            axis
            for axis, got, want in zip(("channels", "height", "width"), image.shape, model.input_shape, strict=False)
            if got != want
        ] or ["rank"]
        raise DimensionError(
            f"image shape {image.shape} does not match model input {model.input_shape}",
            axes=axes,
            expected=model.input_shape,
            actual=image.shape,
        )


def forward(model: Model, image: Tensor) -> ForwardCache:
    """Run the full stack, keeping what the backward pass needs."""
    image = np.asarray(image, dtype=np.float64)
    _check_image(model, image)
    conv_out = conv2d_forward(image, model.conv)
    pooled, pool_index = maxpool2d_forward(conv_out, model.pool)
    flat = flatten_forward(pooled)
    hidden_out = dense_forward(flat, model.hidden)
    probability = float(dense_forward(hidden_out, model.output)[0])
    return ForwardCache(
        image=image,
        conv_out=conv_out,
        pool_index=pool_index,
        pooled_shape=pooled.shape,
        flat=flat,
        hidden_out=hidden_out,
        probability=probability,
    )


def backward(model: Model, cache: ForwardCache, dloss_dp: float, include_image: bool = False) -> Gradients:
    """Backpropagate ``d loss / d probability`` through every layer."""
    upstream = np.array([dloss_dp], dtype=np.float64)
    grad_hidden_out, grad_ow, grad_ob = dense_backward(cache.hidden_out, model.output, upstream)
    grad_flat, grad_hw, grad_hb = dense_backward(cache.flat, model.hidden, grad_hidden_out)
    grad_pooled = flatten_backward(grad_flat, cache.pooled_shape)
    grad_conv_out = maxpool2d_backward(cache.pool_index, grad_pooled, cache.conv_out.shape)
    grad_image, grad_cw, grad_cb = conv2d_backward(cache.image, model.conv, grad_conv_out)
    return Gradients(
        conv_weights=grad_cw,
        conv_bias=grad_cb,
        hidden_weights=grad_hw,
        hidden_bias=grad_hb,
        output_weights=grad_ow,
        output_bias=grad_ob,
        image=grad_image if include_image else None,
    )


def model_predict(model: Model, image: Tensor) -> float:
    """Fire probability for one image, strictly inside (0, 1)."""
    return forward(model, image).probability
