"""Dense network: affine -> batch norm -> ReLU hidden layers, affine -> sigmoid output.

Everything runs in float64 numpy. Parameters are exposed as one ordered list
of ``(name, array)`` pairs so the optimizer, the gradient check and the model
file all walk them the same way.
"""

import copy
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ise_denoise.src.errors import DomainError, StateError
from ise_denoise.src.neuralnet.loss import mape_loss

BN_EPS = 1e-5

_SIGMOID_LOW = np.finfo(np.float64).tiny
_SIGMOID_HIGH = 1.0 - np.finfo(np.float64).epsneg


class Mode(str, Enum):
    TRAIN = "train"
    INFER = "infer"


class Activation(str, Enum):
    RELU = "relu"
    SIGMOID = "sigmoid"


@dataclass(frozen=True)
class LayerSpec:
    width: int
    has_batchnorm: bool
    activation: Activation


def sigmoid(z: np.ndarray) -> np.ndarray:
    """Logistic function kept strictly inside (0, 1)."""
    return np.clip(0.5 * (1.0 + np.tanh(0.5 * z)), _SIGMOID_LOW, _SIGMOID_HIGH)


class NetworkModel:
    """Fully connected regressor with batch-normalized ReLU hidden layers.

    ``norm_in`` and ``norm_out`` are the scale factors of the inputs and the
    targets; they stay ``None`` until fitted on training data.
    """

    def __init__(
        self,
        input_dim: int,
        widths: Sequence[int],
        bn_momentum: float = 0.99,
    ):
        if input_dim < 1 or not widths or any(width < 1 for width in widths):
            raise DomainError("input_dim and every layer width must be positive")
        self.input_dim = int(input_dim)
        self.layers: Tuple[LayerSpec, ...] = tuple(
            LayerSpec(int(width), True, Activation.RELU) for width in widths[:-1]
        ) + (LayerSpec(int(widths[-1]), False, Activation.SIGMOID),)
        self.bn_momentum = bn_momentum
        self.mode = Mode.INFER
        self.norm_in: Optional[float] = None
        self.norm_out: Optional[float] = None

        fan_in = self.input_dim
        self.weights: List[np.ndarray] = []
        self.biases: List[np.ndarray] = []
        self.gamma: List[Optional[np.ndarray]] = []
        self.beta: List[Optional[np.ndarray]] = []
        self.running_mean: List[Optional[np.ndarray]] = []
        self.running_var: List[Optional[np.ndarray]] = []
        for layer in self.layers:
            self.weights.append(np.zeros((fan_in, layer.width)))
            self.biases.append(np.zeros(layer.width))
            if layer.has_batchnorm:
                self.gamma.append(np.ones(layer.width))
                self.beta.append(np.zeros(layer.width))
                self.running_mean.append(np.zeros(layer.width))
                self.running_var.append(np.ones(layer.width))
            else:
                self.gamma.append(None)
                self.beta.append(None)
                self.running_mean.append(None)
                self.running_var.append(None)
            fan_in = layer.width
        self._cache: Optional[List[Dict[str, np.ndarray]]] = None

    @classmethod
    def initialize(
        cls,
        input_dim: int,
        widths: Sequence[int],
        seed: int,
        bn_momentum: float = 0.99,
    ) -> "NetworkModel":
        """He-uniform weights ``U(-sqrt(6/fan_in), sqrt(6/fan_in))``, zero biases."""
        model = cls(input_dim, widths, bn_momentum)
        rng = np.random.default_rng(seed)
        for index, weight in enumerate(model.weights):
            limit = np.sqrt(6.0 / weight.shape[0])
            model.weights[index] = rng.uniform(-limit, limit, size=weight.shape)
        return model

    @property
    def architecture(self) -> Tuple[int, ...]:
        return (self.input_dim, *(layer.width for layer in self.layers))

    @property
    def output_dim(self) -> int:
        return self.layers[-1].width

    @property
    def is_fitted(self) -> bool:
        return self.norm_in is not None and self.norm_out is not None

    def parameters(self) -> List[Tuple[str, np.ndarray]]:
        """Trainable arrays in layer order: W, b, then gamma, beta for batch-norm layers."""
        params: List[Tuple[str, np.ndarray]] = []
        for index, layer in enumerate(self.layers):
            params.append((f"W{index}", self.weights[index]))
            params.append((f"b{index}", self.biases[index]))
            if layer.has_batchnorm:
                params.append((f"gamma{index}", self.gamma[index]))
                params.append((f"beta{index}", self.beta[index]))
        return params

    def copy(self) -> "NetworkModel":
        clone = copy.deepcopy(self)
        clone._cache = None
        return clone

    def load_state_from(self, other: "NetworkModel") -> None:
        """Overwrite every array and scale factor with ``other``'s."""
        if other.architecture != self.architecture:
            raise DomainError("cannot copy state between different architectures")
        for name in ("weights", "biases", "gamma", "beta", "running_mean", "running_var"):
            setattr(
                self,
                name,
                [None if a is None else a.copy() for a in getattr(other, name)],
            )
        self.norm_in = other.norm_in
        self.norm_out = other.norm_out
        self._cache = None

    def forward(self, batch, mode: Mode = Mode.INFER) -> np.ndarray:
        """Outputs in (0, 1) for an ``m x input_dim`` batch.

        Train mode normalizes with batch statistics (population variance),
        updates the running statistics and caches what ``backward`` needs.
        Infer mode normalizes with the running statistics.
        """
        mode = Mode(mode)
        x = np.asarray(batch, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.input_dim:
            raise DomainError(
                f"batch must have shape (m, {self.input_dim}), got {x.shape}"
            )
        if mode is Mode.TRAIN and x.shape[0] < 2:
            raise DomainError("train-mode batches need at least two rows")
        self.mode = mode
        cache: List[Dict[str, np.ndarray]] = []

        for index, layer in enumerate(self.layers):
            z = x @ self.weights[index] + self.biases[index]
            entry: Dict[str, np.ndarray] = {"x": x}
            if layer.has_batchnorm:
                if mode is Mode.TRAIN:
                    mean = z.mean(axis=0)
                    var = z.var(axis=0)
                    momentum = self.bn_momentum
                    self.running_mean[index] = (
                        momentum * self.running_mean[index] + (1.0 - momentum) * mean
                    )
                    self.running_var[index] = (
                        momentum * self.running_var[index] + (1.0 - momentum) * var
                    )
                else:
                    mean = self.running_mean[index]
                    var = self.running_var[index]
                inv_std = 1.0 / np.sqrt(var + BN_EPS)
                x_hat = (z - mean) * inv_std
                y = self.gamma[index] * x_hat + self.beta[index]
                x = np.maximum(y, 0.0)
                entry.update(x_hat=x_hat, inv_std=inv_std, y=y)
            else:
                x = sigmoid(z)
                entry["out"] = x
            cache.append(entry)

        self._cache = cache if mode is Mode.TRAIN else None
        return x

    def backward(self, grad_out: np.ndarray) -> List[np.ndarray]:
        """Gradients aligned with ``parameters()`` from the last train-mode forward."""
        if self._cache is None:
            raise StateError("backward needs a preceding train-mode forward pass")
        grads: Dict[str, np.ndarray] = {}
        grad = np.asarray(grad_out, dtype=np.float64)

        for index in reversed(range(len(self.layers))):
            layer = self.layers[index]
            entry = self._cache[index]
            if layer.has_batchnorm:
                dy = grad * (entry["y"] > 0)
                x_hat = entry["x_hat"]
                grads[f"gamma{index}"] = np.sum(dy * x_hat, axis=0)
                grads[f"beta{index}"] = np.sum(dy, axis=0)
                dx_hat = dy * self.gamma[index]
                m = dx_hat.shape[0]
                dz = (
                    entry["inv_std"]
                    / m
                    * (
                        m * dx_hat
                        - np.sum(dx_hat, axis=0)
                        - x_hat * np.sum(dx_hat * x_hat, axis=0)
                    )
                )
            else:
                out = entry["out"]
                dz = grad * out * (1.0 - out)
            grads[f"W{index}"] = entry["x"].T @ dz
            grads[f"b{index}"] = np.sum(dz, axis=0)
            grad = dz @ self.weights[index].T

        return [grads[name] for name, _ in self.parameters()]


def forward(model: NetworkModel, batch, mode: Mode = Mode.INFER) -> np.ndarray:
    """Run ``model`` on one batch.

    Args:
        model: Network to run; train mode updates its batch-norm statistics.
        batch: ``m x input_dim`` normalized voltages.
        mode: ``Mode.TRAIN`` or ``Mode.INFER``.

    Returns:
        ``m x output_dim`` sigmoid outputs in (0, 1).

    Raises:
        DomainError: If the batch has the wrong width, or fewer than two rows
            in train mode.
    """
    return model.forward(batch, mode)


def backward(model: NetworkModel, batch, gt, eps_mape: float = 1e-7) -> List[np.ndarray]:
    """Train-mode forward on ``batch`` followed by MAPE backpropagation."""
    return loss_and_gradients(model, batch, gt, eps_mape)[1]


def loss_and_gradients(
    model: NetworkModel, batch, gt, eps_mape: float = 1e-7
) -> Tuple[float, List[np.ndarray]]:
    """MAPE loss of a train-mode pass and the gradient of every parameter.

    Args:
        model: Network whose cache and running statistics are updated.
        batch: ``m x input_dim`` normalized voltages, ``m >= 2``.
        gt: ``m x output_dim`` normalized targets.
        eps_mape: Guard added to ``|gt|`` in the denominator.

    Returns:
        The loss in percent and a gradient list in ``model.parameters()``
        order.
    """
    pred = model.forward(batch, Mode.TRAIN)
    loss, grad_out = mape_loss(gt, pred, eps_mape)
    return loss, model.backward(grad_out)
