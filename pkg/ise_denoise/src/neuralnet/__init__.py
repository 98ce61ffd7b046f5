"""Dense artifact-removal network: layers, loss, optimizer, training and model files."""

from ise_denoise.src.neuralnet.config import (
    ARCHITECTURES,
    SUGGESTED_ARCHITECTURE,
    TrainConfig,
    parse_architecture,
    split_architectures,
)
from ise_denoise.src.neuralnet.dataset import Dataset
from ise_denoise.src.neuralnet.loss import mape_loss
from ise_denoise.src.neuralnet.network import (
    BN_EPS,
    Activation,
    LayerSpec,
    Mode,
    NetworkModel,
    backward,
    forward,
    loss_and_gradients,
    sigmoid,
)
from ise_denoise.src.neuralnet.normalization import denormalize, normalize, normalize_fit
from ise_denoise.src.neuralnet.optim import AdamState, adam_step, learning_rate
from ise_denoise.src.neuralnet.serialization import load, save
from ise_denoise.src.neuralnet.trainer import (
    EpochRecord,
    TrainingResult,
    initialize_model,
    predict,
    train,
)

__all__ = [
    "ARCHITECTURES",
    "BN_EPS",
    "SUGGESTED_ARCHITECTURE",
    "Activation",
    "AdamState",
    "Dataset",
    "EpochRecord",
    "LayerSpec",
    "Mode",
    "NetworkModel",
    "TrainConfig",
    "TrainingResult",
    "adam_step",
    "backward",
    "denormalize",
    "forward",
    "initialize_model",
    "learning_rate",
    "load",
    "loss_and_gradients",
    "mape_loss",
    "normalize",
    "normalize_fit",
    "parse_architecture",
    "predict",
    "save",
    "sigmoid",
    "split_architectures",
    "train",
]
