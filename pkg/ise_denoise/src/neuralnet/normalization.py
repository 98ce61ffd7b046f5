"""Scalar max-scale normalization of voltages and concentrations."""

from typing import Tuple

import numpy as np

from ise_denoise.src.errors import DomainError, StateError
from ise_denoise.src.neuralnet.dataset import Dataset


def normalize_fit(train: Dataset) -> Tuple[float, float]:
    """``(max |input|, max target)`` over the training set."""
    if len(train) < 1:
        raise DomainError("normalization needs a nonempty training set")
    norm_in = float(np.max(np.abs(train.inputs)))
    norm_out = float(np.max(train.targets))
    if not norm_in > 0 or not norm_out > 0:
        raise DomainError(
            f"normalization scales must be positive, got norm_in={norm_in}, norm_out={norm_out}"
        )
    return norm_in, norm_out


def _check_scale(scale) -> float:
    if scale is None:
        raise StateError("normalization has not been fitted")
    if not scale > 0:
        raise DomainError(f"normalization scale must be positive, got {scale}")
    return float(scale)


def normalize(values, scale: float) -> np.ndarray:
    return np.asarray(values, dtype=np.float64) / _check_scale(scale)


def denormalize(values, scale: float) -> np.ndarray:
    return np.asarray(values, dtype=np.float64) * _check_scale(scale)
