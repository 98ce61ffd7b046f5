"""Bench protocol: distilled water, then ten droplets of concentrate.

``ProtocolConfig`` is the ``sim.*`` section of the pipeline config. Its
defaults reproduce the mixture and single-solvent dilution schedules with the
default artifact magnitudes.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ise_denoise.src.chem import (
    CANONICAL_ORDER,
    ActivityModel,
    ElectrodeSpec,
    ExponentConvention,
    IonSpecies,
    default_registry,
    default_selectivity,
    dilution_multiple,
)
from ise_denoise.src.errors import DomainError
from ise_denoise.src.sim.models import DropletEvent, SimConfig, Trace
from ise_denoise.src.sim.simulator import simulate
from ise_denoise.utils.pylogger import get_python_logger

logger = get_python_logger()

# Seed offset between the single-solvent runs of different ions
SINGLE_SOLVENT_SEED_STRIDE = 1000


class ExperimentKind(str, Enum):
    SINGLE_SOLVENT = "single_solvent"
    MIXTURE = "mixture"


class ProtocolConfig(BaseModel):
    """Simulation parameters (``sim.*`` keys)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = Field(default=42, ge=0, lt=2**64)
    repeats: int = Field(default=10, ge=1)
    steps: int = Field(default=10, ge=1)
    sample_rate: float = Field(default=1.0, gt=0, description="Hz")
    first_event: float = Field(default=60.0, ge=0, description="s of distilled water")
    event_interval: float = Field(default=240.0, gt=0, description="s between droplets")
    settle_time: float = Field(default=60.0, ge=0)
    noise_sd: float = Field(default=0.002, ge=0, description="V")
    crosstalk: float = Field(default=0.02, description="off-diagonal gain")
    kinetic_amplitude: float = Field(default=0.05, description="V")
    kinetic_tau: float = Field(default=3.0, gt=0, description="s")
    kinetic_omega: float = Field(default=1.5, description="rad/s")
    temperature: float = Field(default=298.15, gt=0, description="K")
    exponent_convention: ExponentConvention = ExponentConvention.CHARGE_POWER
    selectivity_same_sign: float = Field(default=0.05, ge=0)
    selectivity_opposite_sign: float = Field(default=0.01, ge=0)
    gamma: float = Field(default=1.0, gt=0)
    detection_floor: float = Field(default=1e-6, gt=0, description="mmol/L")
    v0: float = Field(default=1000.0, gt=0, description="mL")
    strength: float = Field(default=100.0, gt=0)
    v_add_single: float = Field(default=10.0, gt=0, description="mL")
    v_add_mixture: float = Field(default=30.0, gt=0, description="mL")
    v_solute_mixture: float = Field(
        default=10.0, gt=0, description="mL of each ion's concentrate per mixture addition"
    )
    e0_K: float = 0.20
    e0_Ca: float = 0.10
    e0_NO3: float = 0.30
    e0_NH4: float = 0.15
    base_K: float = Field(default=4.0, ge=0, description="mmol/L at multiple 1")
    base_Ca: float = Field(default=1.0, ge=0)
    base_NO3: float = Field(default=4.0, ge=0)
    base_NH4: float = Field(default=0.5, ge=0)

    def e0(self, ion: IonSpecies) -> float:
        return getattr(self, f"e0_{ion.name}")

    def base(self, ion: IonSpecies) -> float:
        return getattr(self, f"base_{ion.name}")


def event_schedule(
    kind: ExperimentKind, config: ProtocolConfig, steps: Optional[int] = None
) -> List[DropletEvent]:
    """Droplets at ``first_event + k * event_interval`` stepping to successive dilution multiples."""
    kind = ExperimentKind(kind)
    steps = config.steps if steps is None else steps
    if kind is ExperimentKind.SINGLE_SOLVENT:
        v_add, v_solute = config.v_add_single, config.v_add_single
    else:
        v_add, v_solute = config.v_add_mixture, config.v_solute_mixture
    return [
        DropletEvent(
            time=config.first_event + k * config.event_interval,
            target_multiple=dilution_multiple(
                k + 1, v_add, config.v0, config.strength, v_solute
            ),
            kinetic_amplitude=config.kinetic_amplitude,
            kinetic_tau=config.kinetic_tau,
            kinetic_omega=config.kinetic_omega,
        )
        for k in range(steps)
    ]


def _electrodes(config: ProtocolConfig, interference: bool) -> tuple[ElectrodeSpec, ...]:
    registry = default_registry()
    ions = [registry.get(name) for name in CANONICAL_ORDER]
    electrodes = []
    for ion in ions:
        selectivity = (
            default_selectivity(
                ion,
                ions,
                config.selectivity_same_sign,
                config.selectivity_opposite_sign,
            )
            if interference
            else {}
        )
        electrodes.append(
            ElectrodeSpec(
                target=ion,
                E0=config.e0(ion),
                selectivity=selectivity,
                exponent_convention=config.exponent_convention,
            )
        )
    return tuple(electrodes)


def build_sim_config(
    kind: ExperimentKind,
    config: ProtocolConfig,
    seed: int,
    ion: Optional[str] = None,
    steps: Optional[int] = None,
) -> SimConfig:
    """SimConfig for one run of the protocol.

    Single-solvent runs dose only ``ion`` and switch selectivity and crosstalk
    off, so only that electrode responds; the other channels read distilled
    water.
    """
    kind = ExperimentKind(kind)
    steps = config.steps if steps is None else steps
    registry = default_registry()
    mixture = kind is ExperimentKind.MIXTURE
    if not mixture:
        if ion is None:
            raise DomainError("single-solvent runs need a target ion")
        registry.get(ion)

    electrodes = _electrodes(config, interference=mixture)
    size = len(electrodes)
    gain = config.crosstalk if mixture else 0.0
    crosstalk = tuple(
        tuple(0.0 if i == j else gain for j in range(size)) for i in range(size)
    )
    base = {
        electrode.target: (
            config.base(electrode.target)
            if mixture or electrode.name == ion
            else 0.0
        )
        for electrode in electrodes
    }
    return SimConfig(
        electrodes=electrodes,
        events=tuple(event_schedule(kind, config, steps)),
        crosstalk=crosstalk,
        noise_sd=config.noise_sd,
        sample_rate=config.sample_rate,
        duration=config.first_event + steps * config.event_interval,
        settle_time=config.settle_time,
        seed=seed,
        base=base,
        temperature=config.temperature,
        activity_model=ActivityModel(default_gamma=config.gamma),
        detection_floor=config.detection_floor,
    )


def run_experiment_protocol(
    kind: ExperimentKind,
    config: ProtocolConfig,
    steps: Optional[int] = None,
    repeats: Optional[int] = None,
    ion: Optional[str] = None,
) -> List[Trace]:
    """Repeat one experiment with per-repeat seeds ``seed + repeat``.

    Single-solvent seeds are further offset by the ion's canonical position so
    the four ions never share a noise stream.
    """
    kind = ExperimentKind(kind)
    repeats = config.repeats if repeats is None else repeats
    offset = 0
    if kind is ExperimentKind.SINGLE_SOLVENT and ion is not None:
        default_registry().get(ion)
        offset = SINGLE_SOLVENT_SEED_STRIDE * (CANONICAL_ORDER.index(ion) + 1)

    traces = [
        simulate(build_sim_config(kind, config, config.seed + offset + r, ion, steps))
        for r in range(repeats)
    ]
    logger.info(
        "Experiment protocol finished",
        kind=kind.value,
        ion=ion,
        repeats=repeats,
        samples=sum(len(trace) for trace in traces),
    )
    return traces
