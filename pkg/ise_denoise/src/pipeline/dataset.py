"""Turning traces into a dataset and splitting it into train and test parts."""

from typing import Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ise_denoise.src.errors import DomainError
from ise_denoise.src.metrics import CONCENTRATION_FLOOR
from ise_denoise.src.neuralnet import Dataset
from ise_denoise.src.sim import Trace
from ise_denoise.utils.pylogger import get_python_logger

logger = get_python_logger()


class SplitSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    test_fraction: float = Field(default=0.2, gt=0, lt=1)
    seed: int = Field(default=42, ge=0, lt=2**64)


def windowed_voltages(voltages: np.ndarray, window: int) -> np.ndarray:
    """Rows ``[V_t, V_{t-1}, ..., V_{t-window+1}]`` for every ``t >= window - 1``."""
    count = voltages.shape[0] - window + 1
    if count <= 0:
        return np.zeros((0, voltages.shape[1] * window))
    return np.hstack([voltages[window - 1 - lag : window - 1 - lag + count] for lag in range(window)])


def build_dataset(
    traces: Sequence[Trace],
    floor: float = CONCENTRATION_FLOOR,
    stable_only: bool = False,
    window: int = 1,
) -> Dataset:
    """Rows whose every concentration reaches ``floor``.

    Windows never cross trace boundaries; the first ``window - 1`` samples of
    each trace only serve as history.
    """
    if not traces:
        raise DomainError("build_dataset needs at least one trace")
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    channels = traces[0].channels
    inputs, targets = [], []
    for trace in traces:
        if trace.channels != channels:
            raise DomainError(f"trace channels {trace.channels} differ from {channels}")
        start = window - 1
        keep = np.all(trace.concentrations[start:] >= floor, axis=1)
        if stable_only:
            keep &= trace.stable[start:]
        inputs.append(windowed_voltages(trace.voltages, window)[keep])
        targets.append(trace.concentrations[start:][keep])

    stacked_targets = np.concatenate(targets)
    if stacked_targets.shape[0] == 0:
        raise DomainError(f"no samples have every concentration >= {floor}")
    dataset = Dataset(np.concatenate(inputs), stacked_targets, channels, window, floor)
    logger.info(
        "Dataset assembled",
        traces=len(traces),
        rows=len(dataset),
        stable_only=stable_only,
        window=window,
    )
    return dataset


def split(dataset: Dataset, spec: SplitSpec) -> Tuple[Dataset, Dataset]:
    """Seeded sampling of ``round(n * test_fraction)`` test rows without replacement.

    ``round`` breaks ties to even. Both parts keep the original row order.
    """
    n = len(dataset)
    n_test = round(n * spec.test_fraction)
    if n_test < 1 or n_test >= n:
        raise DomainError(
            f"{n} rows cannot be split with test_fraction {spec.test_fraction}"
        )
    permutation = np.random.default_rng(spec.seed).permutation(n)
    test_rows = np.sort(permutation[:n_test])
    train_rows = np.sort(permutation[n_test:])
    return dataset.subset(train_rows), dataset.subset(test_rows)
