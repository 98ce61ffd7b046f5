"""Pytest configuration and common fixtures."""

from unittest.mock import Mock

import numpy as np
import pytest

from ise_denoise.src.chem import CANONICAL_ORDER, default_registry
from ise_denoise.src.neuralnet import Dataset, TrainConfig
from ise_denoise.src.pipeline import PipelineConfig
from ise_denoise.src.sim import ExperimentKind, ProtocolConfig, run_experiment_protocol


@pytest.fixture
def registry():
    """Provide the default ion registry."""
    return default_registry()


@pytest.fixture
def ions(registry):
    """Provide the four ions in canonical order."""
    return [registry.get(name) for name in CANONICAL_ORDER]


@pytest.fixture
def short_protocol():
    """Provide a protocol that runs in milliseconds."""
    return ProtocolConfig(
        repeats=2,
        steps=3,
        first_event=10.0,
        event_interval=30.0,
        settle_time=10.0,
    )


@pytest.fixture
def clean_protocol():
    """Provide a protocol with every artifact switched off."""
    return ProtocolConfig(
        repeats=1,
        steps=10,
        first_event=10.0,
        event_interval=20.0,
        settle_time=5.0,
        noise_sd=0.0,
        crosstalk=0.0,
        kinetic_amplitude=0.0,
        selectivity_same_sign=0.0,
        selectivity_opposite_sign=0.0,
    )


@pytest.fixture
def mixture_traces(short_protocol):
    """Provide two short mixture traces."""
    return run_experiment_protocol(ExperimentKind.MIXTURE, short_protocol)


@pytest.fixture
def short_pipeline_config(short_protocol):
    """Provide a pipeline config small enough for CLI tests."""
    return PipelineConfig(
        sim=short_protocol,
        train=TrainConfig(arch="8,8,4", max_epochs=3, batch_size=16, lr0=1e-2),
    )


@pytest.fixture
def toy_dataset():
    """Provide y = x / 2 on x in [0.1, 1] as a one-channel dataset."""
    x = np.linspace(0.1, 1.0, 200).reshape(-1, 1)
    return Dataset(x, x / 2.0, channels=("x",))


@pytest.fixture
def rng():
    """Provide a seeded random generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def mock_logger():
    """Provide mock logger for testing."""
    logger = Mock()
    logger.info = Mock()
    logger.error = Mock()
    logger.warning = Mock()
    logger.debug = Mock()
    logger.critical = Mock()
    return logger


@pytest.fixture
def sample_success_response():
    """Provide sample command summary for testing."""
    return {
        "status": "success",
        "out": "runs/traces",
        "traces": 50,
    }
