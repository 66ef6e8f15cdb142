"""From-scratch convolutional classifier: layers, model, training, gradient checks."""

from firecast.nn.activations import activation_apply, sigmoid
from firecast.nn.gradcheck import gradient_check
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
    maxpool2d_backward,
    maxpool2d_forward,
)
from firecast.nn.losses import bce
from firecast.nn.model import Model, init_model, model_predict
from firecast.nn.training import TrainingHistory, evaluate, fit, train_epoch

__all__ = [
    "ConvLayer",
    "DenseLayer",
    "Flatten",
    "Model",
    "PoolIndex",
    "PoolSpec",
    "TrainingHistory",
    "activation_apply",
    "bce",
    "conv2d_backward",
    "conv2d_forward",
    "dense_backward",
    "dense_forward",
    "evaluate",
    "fit",
    "gradient_check",
    "init_model",
    "maxpool2d_backward",
    "maxpool2d_forward",
    "model_predict",
    "sigmoid",
    "train_epoch",
]
