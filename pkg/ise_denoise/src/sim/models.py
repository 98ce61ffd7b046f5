"""Simulation inputs and the traces they produce."""

import hashlib
from dataclasses import dataclass, field
from typing import List, Mapping, Tuple

import numpy as np

from ise_denoise.src.chem import (
    DEFAULT_CONSTANTS,
    IDEAL_SOLUTION,
    STANDARD_TEMPERATURE,
    YAMAZAKI_BASE,
    ActivityModel,
    ElectrodeSpec,
    IonSpecies,
    PhysicalConstants,
)
from ise_denoise.src.errors import DomainError

DEFAULT_DETECTION_FLOOR = 1e-6


@dataclass(frozen=True)
class DropletEvent:
    """A droplet of concentrate that steps the beaker to ``target_multiple``.

    The kinetic fields parameterize the damped-oscillation disturbance the
    droplet causes on every membrane.
    """

    time: float
    target_multiple: float
    kinetic_amplitude: float = 0.05
    kinetic_tau: float = 3.0
    kinetic_omega: float = 1.5

    def __post_init__(self) -> None:
        if not self.time >= 0:
            raise DomainError(f"event time must be >= 0, got {self.time}")
        if not self.kinetic_tau > 0:
            raise DomainError(f"kinetic_tau must be positive, got {self.kinetic_tau}")
        if not self.target_multiple >= 0:
            raise DomainError(
                f"target multiple must be >= 0, got {self.target_multiple}"
            )


@dataclass(frozen=True)
class SimConfig:
    """Everything ``simulate`` needs; two equal configs give identical traces.

    ``base`` is the composition at multiple 1. Ions the beaker does not
    receive (single-solvent runs) are listed with a zero base value.
    """

    electrodes: Tuple[ElectrodeSpec, ...]
    events: Tuple[DropletEvent, ...] = ()
    crosstalk: Tuple[Tuple[float, ...], ...] = ()
    noise_sd: float = 0.002
    sample_rate: float = 1.0
    duration: float = 0.0
    settle_time: float = 60.0
    seed: int = 0
    base: Mapping[IonSpecies, float] = field(default_factory=lambda: dict(YAMAZAKI_BASE))
    temperature: float = STANDARD_TEMPERATURE
    activity_model: ActivityModel = IDEAL_SOLUTION
    constants: PhysicalConstants = DEFAULT_CONSTANTS
    detection_floor: float = DEFAULT_DETECTION_FLOOR

    def __post_init__(self) -> None:
        object.__setattr__(self, "electrodes", tuple(self.electrodes))
        object.__setattr__(self, "events", tuple(self.events))
        size = len(self.electrodes)
        if size == 0:
            raise DomainError("a simulation needs at least one electrode")
        if not self.crosstalk:
            object.__setattr__(
                self, "crosstalk", tuple((0.0,) * size for _ in range(size))
            )
        else:
            object.__setattr__(
                self,
                "crosstalk",
                tuple(tuple(float(g) for g in row) for row in self.crosstalk),
            )
        matrix = self.crosstalk_matrix
        if matrix.shape != (size, size):
            raise DomainError(f"crosstalk matrix must be {size}x{size}")
        if np.any(np.diag(matrix) != 0.0):
            raise DomainError("crosstalk matrix diagonal must be exactly zero")
        if not self.noise_sd >= 0:
            raise DomainError(f"noise_sd must be >= 0, got {self.noise_sd}")
        if not self.sample_rate > 0:
            raise DomainError(f"sample_rate must be positive, got {self.sample_rate}")
        if not self.duration >= 0:
            raise DomainError(f"duration must be >= 0, got {self.duration}")
        if not self.settle_time >= 0:
            raise DomainError(f"settle_time must be >= 0, got {self.settle_time}")
        if not self.detection_floor > 0:
            raise DomainError("detection_floor must be positive")
        times = [event.time for event in self.events]
        if times != sorted(times):
            raise DomainError("droplet events must be sorted by time")
        targets = {electrode.target for electrode in self.electrodes}
        missing = targets.difference(self.base)
        if missing:
            raise DomainError(
                f"base composition lacks electrode ions: {sorted(ion.name for ion in missing)}"
            )

    @property
    def crosstalk_matrix(self) -> np.ndarray:
        return np.array(self.crosstalk, dtype=np.float64).reshape(
            len(self.crosstalk), -1
        )

    @property
    def channels(self) -> Tuple[str, ...]:
        return tuple(electrode.name for electrode in self.electrodes)

    def digest(self) -> str:
        """Stable identifier of this configuration."""
        return hashlib.blake2b(repr(self).encode("utf-8"), digest_size=8).hexdigest()


@dataclass(frozen=True)
class TraceSample:
    """One tick of a multi-electrode recording."""

    time: float
    voltages: Tuple[float, ...]
    true_concentrations: Tuple[float, ...]
    stable: bool


@dataclass(frozen=True, eq=False)
class Trace:
    """A time-ordered recording, stored column-wise.

    Arrays are read-only once the trace is built.
    """

    times: np.ndarray
    voltages: np.ndarray
    concentrations: np.ndarray
    stable: np.ndarray
    channels: Tuple[str, ...]
    config_digest: str = ""

    def __post_init__(self) -> None:
        width = len(self.channels)
        times = np.array(self.times, dtype=np.float64).reshape(-1)
        count = times.shape[0]
        voltages = np.array(self.voltages, dtype=np.float64).reshape(count, width)
        concentrations = np.array(self.concentrations, dtype=np.float64).reshape(
            count, width
        )
        stable = np.array(self.stable, dtype=bool).reshape(count)
        if count > 1 and not np.all(np.diff(times) > 0):
            raise DomainError("trace time stamps must be strictly increasing")
        if np.any(concentrations < 0):
            raise DomainError("trace concentrations must be >= 0")
        for name, array in (
            ("times", times),
            ("voltages", voltages),
            ("concentrations", concentrations),
            ("stable", stable),
        ):
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        object.__setattr__(self, "channels", tuple(self.channels))

    def __len__(self) -> int:
        return int(self.times.shape[0])

    @property
    def samples(self) -> List[TraceSample]:
        return [
            TraceSample(
                float(self.times[i]),
                tuple(float(v) for v in self.voltages[i]),
                tuple(float(c) for c in self.concentrations[i]),
                bool(self.stable[i]),
            )
            for i in range(len(self))
        ]

    @classmethod
    def from_samples(
        cls,
        samples: List[TraceSample],
        channels: Tuple[str, ...],
        config_digest: str = "",
    ) -> "Trace":
        width = len(channels)
        for sample in samples:
            if len(sample.voltages) != width or len(sample.true_concentrations) != width:
                raise DomainError(
                    f"sample at t={sample.time} does not have {width} channels"
                )
        return cls(
            times=np.array([s.time for s in samples], dtype=np.float64),
            voltages=np.array([s.voltages for s in samples], dtype=np.float64).reshape(
                -1, width
            ),
            concentrations=np.array(
                [s.true_concentrations for s in samples], dtype=np.float64
            ).reshape(-1, width),
            stable=np.array([s.stable for s in samples], dtype=bool),
            channels=channels,
            config_digest=config_digest,
        )

    def identical_to(self, other: "Trace", digest: bool = False) -> bool:
        """Bitwise equality of every column (and optionally the digest)."""
        same = (
            self.channels == other.channels
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.voltages, other.voltages)
            and np.array_equal(self.concentrations, other.concentrations)
            and np.array_equal(self.stable, other.stable)
        )
        if digest:
            same = same and self.config_digest == other.config_digest
        return same
