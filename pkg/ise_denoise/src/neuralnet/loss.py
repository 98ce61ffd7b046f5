"""MAPE training loss."""

import numpy as np

from ise_denoise.src.errors import DomainError


def mape_loss(gt, pred, eps_mape: float = 1e-7) -> tuple[float, np.ndarray]:
    """Percent MAPE over all elements and its gradient with respect to ``pred``.

    ``eps_mape`` is added to ``|gt|`` in the denominator. At exact equality the
    subgradient 0 is used.
    """
    gt = np.asarray(gt, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.float64)
    if gt.shape != pred.shape:
        raise DomainError(f"shape mismatch: ground truth {gt.shape}, prediction {pred.shape}")
    n = gt.size
    if n == 0:
        raise DomainError("loss needs at least one element")
    diff = gt - pred
    denom = np.abs(gt) + eps_mape
    loss = float(100.0 / n * np.sum(np.abs(diff) / denom))
    grad = -100.0 / n * np.sign(diff) / denom
    return loss, grad
