"""Trace generation with the three artifacts injected."""

import numpy as np

from ise_denoise.src.chem import SolutionComposition, yamazaki_composition
from ise_denoise.src.sim.artifacts import apply_crosstalk, clean_voltage
from ise_denoise.src.sim.models import SimConfig, Trace
from ise_denoise.utils.pylogger import get_python_logger

logger = get_python_logger()


def _composition(config: SimConfig, multiple: float) -> SolutionComposition:
    return yamazaki_composition(multiple, config.temperature, config.base)


def _sample_times(config: SimConfig) -> np.ndarray:
    count = int(np.floor(config.duration * config.sample_rate + 1e-9)) + 1
    return np.arange(count, dtype=np.float64) / config.sample_rate


def simulate(config: SimConfig) -> Trace:
    """Generate one recording from ``config``.

    Per tick: the beaker holds the latest droplet's composition (a step at the
    droplet time), clean voltages follow the interference model, the latest
    droplet's kinetic disturbance is added to every channel, the crosstalk
    matrix mixes deviations from the distilled-water baseline, and Gaussian
    noise is drawn from a generator seeded with ``config.seed``.
    """
    times = _sample_times(config)
    electrodes = config.electrodes
    multiples = [0.0] + [event.target_multiple for event in config.events]
    compositions = [_composition(config, multiple) for multiple in multiples]

    # Row j holds segment j: row 0 is distilled water, row j+1 follows event j.
    clean = np.array(
        [
            [
                clean_voltage(
                    electrode,
                    composition,
                    config.activity_model,
                    config.constants,
                    config.detection_floor,
                )
                for electrode in electrodes
            ]
            for composition in compositions
        ],
        dtype=np.float64,
    )
    truth = np.array(
        [
            [composition.concentration(electrode.target) for electrode in electrodes]
            for composition in compositions
        ],
        dtype=np.float64,
    )

    event_times = np.array([event.time for event in config.events], dtype=np.float64)
    segment = np.searchsorted(event_times, times, side="right")
    voltages = clean[segment].copy()
    concentrations = truth[segment]

    stable = np.ones(times.shape, dtype=bool)
    if config.events:
        after = segment > 0
        last = segment[after] - 1
        delta = times[after] - event_times[last]
        amplitude = np.array([e.kinetic_amplitude for e in config.events])[last]
        tau = np.array([e.kinetic_tau for e in config.events])[last]
        omega = np.array([e.kinetic_omega for e in config.events])[last]
        voltages[after] += (
            amplitude * np.exp(-delta / tau) * np.cos(omega * delta)
        )[:, None]
        stable[after] = delta >= config.settle_time

    voltages = apply_crosstalk(voltages, clean[0], config.crosstalk_matrix)

    rng = np.random.default_rng(config.seed)
    if config.noise_sd > 0:
        voltages = voltages + rng.normal(0.0, config.noise_sd, size=voltages.shape)

    trace = Trace(
        times=times,
        voltages=voltages,
        concentrations=concentrations,
        stable=stable,
        channels=config.channels,
        config_digest=config.digest(),
    )
    logger.debug(
        "Simulated trace",
        samples=len(trace),
        events=len(config.events),
        seed=config.seed,
        digest=trace.config_digest,
    )
    return trace
