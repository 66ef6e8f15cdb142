"""Layer types and their forward/backward maps.

All operations act on a single sample. Convolution uses valid padding,
stride 1 and cross-correlation orientation (no kernel flip). Max pooling
drops any trailing remainder and resolves ties to the first maximum in
row-major order within the window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from firecast.common.errors import DimensionError
from firecast.nn.activations import ACTIVATIONS, activate
from firecast.nn.tensor import Tensor, as_tensor, require_shape


@dataclass
class ConvLayer:
    """Valid 2-D convolution with ``filter_count`` output channels."""

    weights: Tensor
    bias: Tensor

    def __post_init__(self):
        self.weights = as_tensor(self.weights, name="conv weights")
        self.bias = as_tensor(self.bias, name="conv bias")
        if self.weights.ndim != 4 or self.weights.shape[2] != self.weights.shape[3]:
            raise DimensionError(
                f"conv weights must have shape [filters, channels, k, k], got {self.weights.shape}",
                axes=("kernel_h", "kernel_w"),
                actual=self.weights.shape,
            )
        require_shape(self.bias, (self.filter_count,), "conv bias", ("filters",))

    @property
    def filter_count(self) -> int:
        return self.weights.shape[0]

    @property
    def in_channels(self) -> int:
        return self.weights.shape[1]

    @property
    def kernel_size(self) -> int:
        return self.weights.shape[2]

    def output_shape(self, input_shape: tuple[int, int, int]) -> tuple[int, int, int]:
        _, h, w = input_shape
        k = self.kernel_size
        return (self.filter_count, h - k + 1, w - k + 1)


@dataclass(frozen=True)
class PoolSpec:
    """Square max-pooling window; ``stride`` defaults to the window."""

    window: int
    stride: int | None = None

    def __post_init__(self):
        if self.window <= 0:
            raise ValueError(f"pool window must be positive, got {self.window}")
        if self.stride is not None and self.stride <= 0:
            raise ValueError(f"pool stride must be positive, got {self.stride}")

    @property
    def step(self) -> int:
        return self.stride if self.stride is not None else self.window

    def output_shape(self, input_shape: tuple[int, int, int]) -> tuple[int, int, int]:
        f, h, w = input_shape
        return (f, (h - self.window) // self.step + 1, (w - self.window) // self.step + 1)


@dataclass(frozen=True)
class Flatten:
    """Parameter-free reshape of a feature map into a vector."""

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int]:
        return (int(np.prod(input_shape)),)


@dataclass
class DenseLayer:
    """Fully connected layer ``activation(W @ x + b)``."""

    weights: Tensor
    bias: Tensor
    activation: str = "relu"

    def __post_init__(self):
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"Unknown activation '{self.activation}'. Must be one of: {', '.join(ACTIVATIONS)}")
        self.weights = as_tensor(self.weights, name="dense weights")
        self.bias = as_tensor(self.bias, name="dense bias")
        if self.weights.ndim != 2:
            raise DimensionError(
                f"dense weights must have shape [out_units, in_units], got {self.weights.shape}",
                axes=("out_units", "in_units"),
                actual=self.weights.shape,
            )
        require_shape(self.bias, (self.out_units,), "dense bias", ("out_units",))

    @property
    def out_units(self) -> int:
        return self.weights.shape[0]

    @property
    def in_units(self) -> int:
        return self.weights.shape[1]


@dataclass(frozen=True)
class PoolIndex:
    """Positions chosen by a max-pooling forward pass.

    ``flat_indices[f, y, x]`` is the row-major offset into the pooled input
    of the maximum selected for output element ``(f, y, x)``.
    """

    flat_indices: np.ndarray
    input_shape: tuple[int, int, int]

    @property
    def output_shape(self) -> tuple[int, ...]:
        return self.flat_indices.shape


# ---------------------------------------------------------------------------
# Convolution
# ---------------------------------------------------------------------------


def _check_conv_input(x: Tensor, layer: ConvLayer) -> None:
    if x.ndim != 3:
        raise DimensionError(
            f"convolution input must be [C, H, W], got shape {x.shape}", axes=("rank",), actual=x.shape
        )
    c, h, w = x.shape
    bad = []
    if c != layer.in_channels:
        bad.append("channels")
    if h < layer.kernel_size:
        bad.append("height")
    if w < layer.kernel_size:
        bad.append("width")
    if bad:
        raise DimensionError(
            f"convolution input {x.shape} incompatible with {layer.in_channels} channels and "
            f"kernel {layer.kernel_size}",
            axes=bad,
            expected=(layer.in_channels, layer.kernel_size, layer.kernel_size),
            actual=x.shape,
        )


def _windows(x: Tensor, k: int) -> np.ndarray:
    """View of shape [C, H-k+1, W-k+1, k, k] over every kxk patch."""
    return sliding_window_view(x, (k, k), axis=(1, 2))


def conv2d_forward(x: Tensor, layer: ConvLayer) -> Tensor:
    """out[f,y,x] = bias[f] + sum_{c,i,j} weights[f,c,i,j] * input[c,y+i,x+j]."""
    _check_conv_input(x, layer)
    patches = _windows(x, layer.kernel_size)
    out = np.einsum("chwij,fcij->fhw", patches, layer.weights)
    return out + layer.bias[:, None, None]


def conv2d_backward(x: Tensor, layer: ConvLayer, upstream_grad: Tensor) -> tuple[Tensor, Tensor, Tensor]:
    """Gradients of the convolution with respect to input, weights and bias."""
    _check_conv_input(x, layer)
    require_shape(upstream_grad, layer.output_shape(x.shape), "conv upstream gradient", ("filters", "height", "width"))
    k = layer.kernel_size
    _, out_h, out_w = upstream_grad.shape
    patches = _windows(x, k)
    grad_weights = np.einsum("fhw,chwij->fcij", upstream_grad, patches)
    grad_bias = upstream_grad.sum(axis=(1, 2))
    grad_input = np.zeros_like(x)
    for i in range(k):
        for j in range(k):
            grad_input[:, i : i + out_h, j : j + out_w] += np.einsum(
                "fhw,fc->chw", upstream_grad, layer.weights[:, :, i, j]
            )
    return grad_input, grad_weights, grad_bias


# ---------------------------------------------------------------------------
# Max pooling
# ---------------------------------------------------------------------------


def maxpool2d_forward(x: Tensor, spec: PoolSpec) -> tuple[Tensor, PoolIndex]:
    """Max over each window; returns the pooled map and chosen positions."""
    if x.ndim != 3:
        raise DimensionError(f"pooling input must be [F, H, W], got shape {x.shape}", axes=("rank",), actual=x.shape)
    f, h, w = x.shape
    bad = [axis for axis, extent in (("height", h), ("width", w)) if extent < spec.window]
    if bad:
        raise DimensionError(
            f"pooling window {spec.window} larger than input {x.shape}",
            axes=bad,
            expected=(spec.window, spec.window),
            actual=x.shape,
        )
    s = spec.step
    _, out_h, out_w = spec.output_shape(x.shape)
    windows = sliding_window_view(x, (spec.window, spec.window), axis=(1, 2))[:, ::s, ::s][:, :out_h, :out_w]
    flat_windows = windows.reshape(f, out_h, out_w, spec.window * spec.window)
    # argmax returns the first maximum, i.e. row-major order inside the window
    local = np.argmax(flat_windows, axis=-1)
    out = np.take_along_axis(flat_windows, local[..., None], axis=-1)[..., 0]

    di, dj = np.divmod(local, spec.window)
    rows = np.arange(out_h)[None, :, None] * s + di
    cols = np.arange(out_w)[None, None, :] * s + dj
    channel = np.arange(f)[:, None, None]
    flat = (channel * h + rows) * w + cols
    return out, PoolIndex(flat_indices=flat, input_shape=(f, h, w))


def maxpool2d_backward(index: PoolIndex, upstream_grad: Tensor, input_shape: tuple[int, int, int]) -> Tensor:
    """Route each upstream gradient to the input position that won its window."""
    input_shape = tuple(input_shape)
    if tuple(index.input_shape) != input_shape:
        raise DimensionError(
            f"pool index was recorded for input {index.input_shape}, not {input_shape}",
            axes=("input_shape",),
            expected=index.input_shape,
            actual=input_shape,
        )
    require_shape(upstream_grad, index.output_shape, "pool upstream gradient", ("filters", "height", "width"))
    grad = np.zeros(int(np.prod(input_shape)), dtype=np.float64)
    np.add.at(grad, index.flat_indices.reshape(-1), upstream_grad.reshape(-1))
    return grad.reshape(input_shape)


# ---------------------------------------------------------------------------
# Flatten
# ---------------------------------------------------------------------------


def flatten_forward(x: Tensor) -> Tensor:
    return x.reshape(-1)


def flatten_backward(upstream_grad: Tensor, input_shape: tuple[int, ...]) -> Tensor:
    if upstream_grad.size != int(np.prod(input_shape)):
        raise DimensionError(
            f"flatten gradient has {upstream_grad.size} elements, input shape {input_shape} needs "
            f"{int(np.prod(input_shape))}",
            axes=("length",),
        )
    return upstream_grad.reshape(input_shape)


# ---------------------------------------------------------------------------
# Dense
# ---------------------------------------------------------------------------


def _check_dense_input(x: Tensor, layer: DenseLayer) -> None:
    if x.ndim != 1 or x.shape[0] != layer.in_units:
        raise DimensionError(
            f"dense input shape {x.shape} does not match in_units {layer.in_units}",
            axes=("in_units",),
            expected=(layer.in_units,),
            actual=x.shape,
        )


def dense_preactivation(x: Tensor, layer: DenseLayer) -> Tensor:
    """z = W @ x + b, before the activation."""
    _check_dense_input(x, layer)
    return layer.weights @ x + layer.bias


def dense_forward(x: Tensor, layer: DenseLayer) -> Tensor:
    value, _ = activate(dense_preactivation(x, layer), layer.activation)
    return value


def dense_backward(x: Tensor, layer: DenseLayer, upstream_grad: Tensor) -> tuple[Tensor, Tensor, Tensor]:
    """Chain-rule gradients through the activation and the affine map."""
    z = dense_preactivation(x, layer)
    require_shape(upstream_grad, (layer.out_units,), "dense upstream gradient", ("out_units",))
    _, derivative = activate(z, layer.activation)
    grad_z = upstream_grad * derivative
    grad_weights = np.outer(grad_z, x)
    grad_input = layer.weights.T @ grad_z
    return grad_input, grad_weights, grad_z
