"""The three artifacts injected into clean electrode voltages."""

import math

import numpy as np

from ise_denoise.src.chem import (
    DEFAULT_CONSTANTS,
    IDEAL_SOLUTION,
    ActivityModel,
    ElectrodeSpec,
    PhysicalConstants,
    SolutionComposition,
    nikolsky_eisenman,
)
from ise_denoise.src.errors import DomainError
from ise_denoise.src.sim.models import DropletEvent


def kinetic_offset(t: float, event: DropletEvent) -> float:
    """Damped-cosine disturbance ``A exp(-d/tau) cos(omega d)`` for d = t - event.time.

    Zero before the droplet lands.
    """
    delta = t - event.time
    if delta < 0:
        return 0.0
    return (
        event.kinetic_amplitude
        * math.exp(-delta / event.kinetic_tau)
        * math.cos(event.kinetic_omega * delta)
    )


def clean_voltage(
    electrode: ElectrodeSpec,
    composition: SolutionComposition,
    activity_model: ActivityModel = IDEAL_SOLUTION,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
    detection_floor: float = 0.0,
) -> float:
    """Artifact-free membrane voltage, i.e. the ion-interference model alone.

    With a positive ``detection_floor`` every concentration is raised to the
    floor first so that distilled water still reads a finite voltage.
    """
    if detection_floor > 0:
        composition = composition.floored(detection_floor)
    return nikolsky_eisenman(electrode, composition, activity_model, constants)


def apply_crosstalk(raw, baseline, G) -> np.ndarray:
    """``raw + G (raw - baseline)``, row-wise when ``raw`` is a matrix of ticks."""
    raw = np.asarray(raw, dtype=np.float64)
    baseline = np.asarray(baseline, dtype=np.float64)
    G = np.asarray(G, dtype=np.float64)
    size = raw.shape[-1]
    if G.shape != (size, size) or baseline.shape[-1] != size:
        raise DomainError(
            f"crosstalk dimensions disagree: voltages {raw.shape}, baseline {baseline.shape}, matrix {G.shape}"
        )
    return raw + (raw - baseline) @ G.T
