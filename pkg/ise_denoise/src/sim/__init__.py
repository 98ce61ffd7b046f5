"""Synthetic multi-electrode traces with ion-interference, kinetic and crosstalk artifacts."""

from ise_denoise.src.sim.artifacts import apply_crosstalk, clean_voltage, kinetic_offset
from ise_denoise.src.sim.models import (
    DEFAULT_DETECTION_FLOOR,
    DropletEvent,
    SimConfig,
    Trace,
    TraceSample,
)
from ise_denoise.src.sim.protocol import (
    ExperimentKind,
    ProtocolConfig,
    build_sim_config,
    event_schedule,
    run_experiment_protocol,
)
from ise_denoise.src.sim.simulator import simulate

__all__ = [
    "DEFAULT_DETECTION_FLOOR",
    "DropletEvent",
    "ExperimentKind",
    "ProtocolConfig",
    "SimConfig",
    "Trace",
    "TraceSample",
    "apply_crosstalk",
    "build_sim_config",
    "clean_voltage",
    "event_schedule",
    "kinetic_offset",
    "run_experiment_protocol",
    "simulate",
]
