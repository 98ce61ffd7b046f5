"""Row-aligned voltage inputs and concentration targets."""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ise_denoise.src.chem import CANONICAL_ORDER
from ise_denoise.src.errors import DomainError
from ise_denoise.src.metrics import CONCENTRATION_FLOOR


@dataclass(frozen=True, eq=False)
class Dataset:
    """Inputs ``n x (channels * window)`` and targets ``n x channels``.

    With ``window > 1`` each input row holds the current voltages followed by
    the voltages of the previous ``window - 1`` ticks, newest first. Every
    target is at least ``floor``; use ``Dataset.filtered`` to drop rows that
    are not.
    """

    inputs: np.ndarray
    targets: np.ndarray
    channels: Tuple[str, ...] = CANONICAL_ORDER
    window: int = 1
    floor: float = CONCENTRATION_FLOOR

    def __post_init__(self) -> None:
        width = len(self.channels)
        if self.window < 1:
            raise DomainError(f"window must be >= 1, got {self.window}")
        inputs = np.array(self.inputs, dtype=np.float64)
        targets = np.array(self.targets, dtype=np.float64)
        if inputs.ndim != 2 or targets.ndim != 2:
            raise DomainError("dataset inputs and targets must be matrices")
        if inputs.shape[0] != targets.shape[0]:
            raise DomainError(
                f"inputs have {inputs.shape[0]} rows but targets have {targets.shape[0]}"
            )
        if inputs.shape[0] < 1:
            raise DomainError("a dataset needs at least one row")
        if targets.shape[1] != width or inputs.shape[1] != width * self.window:
            raise DomainError(
                f"expected {width * self.window} input and {width} target columns, "
                f"got {inputs.shape[1]} and {targets.shape[1]}"
            )
        if np.any(targets < self.floor):
            raise DomainError(f"targets below the concentration floor {self.floor}")
        inputs.setflags(write=False)
        targets.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "channels", tuple(self.channels))

    @classmethod
    def filtered(
        cls,
        inputs,
        targets,
        floor: float = CONCENTRATION_FLOOR,
        channels: Tuple[str, ...] = CANONICAL_ORDER,
        window: int = 1,
    ) -> "Dataset":
        """Keep only rows whose every target reaches ``floor``."""
        inputs = np.asarray(inputs, dtype=np.float64)
        targets = np.asarray(targets, dtype=np.float64)
        keep = np.all(targets >= floor, axis=1) if targets.size else np.zeros(0, bool)
        if not np.any(keep):
            raise DomainError(f"no rows have every concentration >= {floor}")
        return cls(inputs[keep], targets[keep], channels, window, floor)

    def __len__(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def voltages(self) -> np.ndarray:
        """Current-tick voltages, one column per channel."""
        return self.inputs[:, : len(self.channels)]

    def subset(self, indices: Sequence[int]) -> "Dataset":
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.inputs[indices],
            self.targets[indices],
            self.channels,
            self.window,
            self.floor,
        )
