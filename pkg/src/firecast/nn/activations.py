"""ReLU and sigmoid activations with their derivatives."""

import math
from typing import Literal

import numpy as np

ActivationKind = Literal["relu", "sigmoid"]
ACTIVATIONS: tuple[str, ...] = ("relu", "sigmoid")

# Beyond +/-36 the logistic value would round to exactly 0 or 1 in float64
SIGMOID_CLIP = 36.0


def sigmoid(x):
    """Logistic function ``1 / (1 + exp(-x))`` on scalars or arrays.

    Inputs are clipped to ``[-SIGMOID_CLIP, SIGMOID_CLIP]`` so the result stays
    strictly inside (0, 1).
    """
    clipped = np.clip(x, -SIGMOID_CLIP, SIGMOID_CLIP)
    return 1.0 / (1.0 + np.exp(-clipped))


def activate(z: np.ndarray, kind: str) -> tuple[np.ndarray, np.ndarray]:
    """Apply an activation elementwise.

    Returns:
        Tuple of (values, derivatives). The ReLU derivative at exactly 0 is 0.
    """
    if kind == "relu":
        return np.maximum(z, 0.0), (z > 0).astype(np.float64)
    if kind == "sigmoid":
        value = sigmoid(z)
        return value, value * (1.0 - value)
    raise ValueError(f"Unknown activation '{kind}'. Must be one of: {', '.join(ACTIVATIONS)}")


def activation_apply(x: float, kind: str) -> tuple[float, float]:
    """Scalar activation returning ``(value, derivative)``."""
    if not math.isfinite(x):
        raise ValueError(f"activation input must be finite, got {x!r}")
    value, derivative = activate(np.float64(x), kind)
    return float(value), float(derivative)
