"""Regression scores used to compare the measurement methods."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ise_denoise.src.errors import DomainError

# Smallest concentration (mmol/L) accepted as ground truth for percentage errors
CONCENTRATION_FLOOR = 1e-6

# Relative tolerance under which a residual sum of squares counts as zero
_ZERO_RESIDUAL = 1e-20


class MetricsReport(BaseModel):
    """One row of the method comparison."""

    model_config = ConfigDict(frozen=True)

    mse: float = Field(ge=0)
    mape_percent: float = Field(ge=0)
    r_squared: float = Field(le=1)
    n: int = Field(ge=1)


def _pair(gt, pred) -> tuple[np.ndarray, np.ndarray]:
    gt = np.asarray(gt, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.float64)
    if gt.shape != pred.shape:
        raise DomainError(f"shape mismatch: ground truth {gt.shape}, prediction {pred.shape}")
    if gt.size == 0:
        raise DomainError("scores need at least one element")
    return gt, pred


def _check_floor(gt: np.ndarray, floor: float) -> None:
    if np.any(np.abs(gt) < floor):
        raise DomainError(
            f"ground truth contains values below the concentration floor {floor}; filter them first"
        )


def mse(gt, pred) -> float:
    """Mean of squared elementwise differences."""
    gt, pred = _pair(gt, pred)
    return float(np.mean((gt - pred) ** 2))


def mape(gt, pred, floor: float = CONCENTRATION_FLOOR) -> float:
    """Mean absolute percentage error, no epsilon guard."""
    gt, pred = _pair(gt, pred)
    _check_floor(gt, floor)
    return float(100.0 * np.mean(np.abs((gt - pred) / gt)))


def r_squared_from_sums(ss_res: float, ss_tot: float, scale: float) -> float:
    """``1 - ss_res / ss_tot``; a zero ``ss_tot`` reports 1 for a zero residual, else 0."""
    if ss_tot == 0.0:
        return 1.0 if ss_res <= _ZERO_RESIDUAL * max(1.0, scale) else 0.0
    return 1.0 - ss_res / ss_tot


def r_squared(gt, pred) -> float:
    """Coefficient of determination pooled over every element of ``gt``."""
    gt, pred = _pair(gt, pred)
    if gt.size < 2:
        raise DomainError("r_squared needs at least two elements")
    flat_gt = gt.reshape(-1)
    flat_pred = pred.reshape(-1)
    ss_res = float(np.sum((flat_gt - flat_pred) ** 2))
    ss_tot = float(np.sum((flat_gt - flat_gt.mean()) ** 2))
    return r_squared_from_sums(ss_res, ss_tot, float(np.sum(flat_gt**2)))


def per_sample_mape(gt, pred, floor: float = CONCENTRATION_FLOOR) -> np.ndarray:
    """MAPE of every row, in percent."""
    gt, pred = _pair(gt, pred)
    gt = np.atleast_2d(gt)
    pred = np.atleast_2d(pred)
    _check_floor(gt, floor)
    return 100.0 * np.mean(np.abs((gt - pred) / gt), axis=1)


def per_sample_mse(gt, pred) -> np.ndarray:
    """MSE of every row."""
    gt, pred = _pair(gt, pred)
    return np.mean((np.atleast_2d(gt) - np.atleast_2d(pred)) ** 2, axis=1)


def evaluate(gt, pred, floor: float = CONCENTRATION_FLOOR) -> MetricsReport:
    """MSE, MAPE and pooled R² of a prediction matrix."""
    gt, pred = _pair(gt, pred)
    return MetricsReport(
        mse=mse(gt, pred),
        mape_percent=mape(gt, pred, floor),
        r_squared=r_squared(gt, pred),
        n=int(np.atleast_2d(gt).shape[0]),
    )
