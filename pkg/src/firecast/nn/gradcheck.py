"""Finite-difference verification of the analytic gradients.

Each analytic parameter gradient is compared with the central difference
``(L(theta + h) - L(theta - h)) / 2h``. Layers are probed with the squared
loss ``0.5 * sum(output ** 2)``; the full model is probed with binary
cross-entropy against ``label``. Pooling has no parameters, so its input
gradient is checked instead.
"""

from __future__ import annotations

import copy
import logging
import math
from collections.abc import Callable

import numpy as np

from firecast.common.errors import NumericError
from firecast.nn.layers import (
    ConvLayer,
    DenseLayer,
    PoolSpec,
    conv2d_backward,
    conv2d_forward,
    dense_backward,
    dense_forward,
    maxpool2d_backward,
    maxpool2d_forward,
)
from firecast.nn.losses import bce
from firecast.nn.model import PARAMETER_NAMES, Model, backward, forward
from firecast.nn.tensor import Tensor

logger = logging.getLogger(__name__)

RELATIVE_FLOOR = 1e-8


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """max |a - n| / max(|a|, |n|, 1e-8) over all elements."""
    a = np.asarray(analytic, dtype=np.float64)
    n = np.asarray(numeric, dtype=np.float64)
    if a.size == 0:
        return 0.0
    denom = np.maximum(np.maximum(np.abs(a), np.abs(n)), RELATIVE_FLOOR)
    return float(np.max(np.abs(a - n) / denom))


def numeric_gradient(loss_fn: Callable[[], float], array: np.ndarray, h: float) -> np.ndarray:
    """Central differences of ``loss_fn`` with respect to every element of ``array``.

    ``array`` is perturbed in place and each element is restored even if
    ``loss_fn`` raises. Callers pass arrays they own.
    """
    if not array.flags.c_contiguous:
        raise ValueError("numeric_gradient needs a C-contiguous array to perturb in place")
    grad = np.zeros_like(array)
    flat = array.reshape(-1)
    out = grad.reshape(-1)
    for i in range(flat.size):
        original = flat[i]
        try:
            flat[i] = original + h
            plus = loss_fn()
            flat[i] = original - h
            minus = loss_fn()
        finally:
            flat[i] = original
        if not (math.isfinite(plus) and math.isfinite(minus)):
            raise NumericError(f"non-finite loss while probing element {i}: {plus!r}, {minus!r}")
        out[i] = (plus - minus) / (2.0 * h)
    return grad


def _squared(output: np.ndarray) -> float:
    return 0.5 * float(np.sum(output * output))


def _check_pairs(pairs: list[tuple[str, np.ndarray, np.ndarray]]) -> float:
    worst = 0.0
    for name, analytic, numeric in pairs:
        err = relative_error(analytic, numeric)
        logger.debug(f"gradient check {name}: max relative error {err:.3e}")
        worst = max(worst, err)
    return worst


def _check_conv(layer: ConvLayer, probe: Tensor, h: float, include_input: bool) -> float:
    out = conv2d_forward(probe, layer)
    grad_in, grad_w, grad_b = conv2d_backward(probe, layer, out)

    def loss() -> float:
        return _squared(conv2d_forward(probe, layer))

    pairs = [
        ("conv.weights", grad_w, numeric_gradient(loss, layer.weights, h)),
        ("conv.bias", grad_b, numeric_gradient(loss, layer.bias, h)),
    ]
    if include_input:
        pairs.append(("input", grad_in, numeric_gradient(loss, probe, h)))
    return _check_pairs(pairs)


def _check_dense(layer: DenseLayer, probe: Tensor, h: float, include_input: bool) -> float:
    out = dense_forward(probe, layer)
    grad_in, grad_w, grad_b = dense_backward(probe, layer, out)

    def loss() -> float:
        return _squared(dense_forward(probe, layer))

    pairs = [
        ("dense.weights", grad_w, numeric_gradient(loss, layer.weights, h)),
        ("dense.bias", grad_b, numeric_gradient(loss, layer.bias, h)),
    ]
    if include_input:
        pairs.append(("input", grad_in, numeric_gradient(loss, probe, h)))
    return _check_pairs(pairs)


def _check_pool(spec: PoolSpec, probe: Tensor, h: float) -> float:
    out, index = maxpool2d_forward(probe, spec)
    grad_in = maxpool2d_backward(index, out, probe.shape)

    def loss() -> float:
        return _squared(maxpool2d_forward(probe, spec)[0])

    return _check_pairs([("input", grad_in, numeric_gradient(loss, probe, h))])


def _check_model(model: Model, probe: Tensor, h: float, include_input: bool, label: int) -> float:
    cache = forward(model, probe)
    _, dloss_dp = bce(label, cache.probability)
    grads = backward(model, cache, dloss_dp, include_image=include_input)

    def loss() -> float:
        return bce(label, forward(model, probe).probability)[0]

    pairs = [
        (name, analytic, numeric_gradient(loss, array, h))
        for name, analytic, (_, array) in zip(PARAMETER_NAMES, grads.as_list(), model.parameters(), strict=True)
    ]
    if include_input:
        pairs.append(("input", grads.image, numeric_gradient(loss, probe, h)))
    return _check_pairs(pairs)


def gradient_check(
    target: Model | ConvLayer | DenseLayer | PoolSpec,
    probe: Tensor,
    h: float = 1e-5,
    include_input: bool = False,
    label: int = 1,
) -> float:
    """Worst relative error between analytic and central-difference gradients.

    Args:
        target: A full model or a single layer. Only a private copy is
            perturbed, so the caller's weights are never written and
            concurrent forward passes on ``target`` are unaffected.
        probe: Input to run through ``target``; it is copied, never modified.
        h: Finite-difference step.
        include_input: Also compare the gradient with respect to ``probe``.
        label: Target label for the model's BCE probe loss.

    Returns:
        max(|a - n| / max(|a|, |n|, 1e-8)) over every compared element.

    Raises:
        ValueError: If ``h`` is not positive or ``probe`` is not finite.
        NumericError: If a probe evaluates to a non-finite loss.
    """
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h!r}")
    probe = np.array(probe, dtype=np.float64)
    if not np.all(np.isfinite(probe)):
        raise ValueError("probe must be finite")
    target = target.copy() if isinstance(target, Model) else copy.deepcopy(target)

    if isinstance(target, Model):
        return _check_model(target, probe, h, include_input, label)
    if isinstance(target, ConvLayer):
        return _check_conv(target, probe, h, include_input)
    if isinstance(target, DenseLayer):
        return _check_dense(target, probe, h, include_input)
    if isinstance(target, PoolSpec):
        return _check_pool(target, probe, h)
    raise TypeError(f"Cannot gradient-check object of type {type(target).__name__}")
