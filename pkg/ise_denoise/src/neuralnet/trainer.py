"""Minibatch training with best-snapshot early stopping, and prediction."""

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ise_denoise.src.errors import DomainError, StateError
from ise_denoise.src.metrics import mape
from ise_denoise.src.neuralnet.config import TrainConfig
from ise_denoise.src.neuralnet.dataset import Dataset
from ise_denoise.src.neuralnet.network import Mode, NetworkModel, loss_and_gradients
from ise_denoise.src.neuralnet.normalization import denormalize, normalize, normalize_fit
from ise_denoise.src.neuralnet.optim import AdamState, adam_step, learning_rate
from ise_denoise.utils.pylogger import get_python_logger

logger = get_python_logger()


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_mape: float
    test_mape: float
    lr: float


@dataclass
class TrainingResult:
    """The trained model (best test-MAPE snapshot) and its per-epoch history."""

    model: NetworkModel
    history: List[EpochRecord] = field(default_factory=list)
    best_epoch: int = -1
    stopped_early: bool = False

    @property
    def best_test_mape(self) -> float:
        if self.best_epoch < 0:
            return math.nan
        return self.history[self.best_epoch].test_mape


def initialize_model(config: TrainConfig, input_dim: int) -> NetworkModel:
    return NetworkModel.initialize(input_dim, config.widths, config.seed, config.bn_momentum)


def predict(model: NetworkModel, voltages) -> np.ndarray:
    """Concentrations in mmol/L from raw voltage rows, each in ``(0, norm_out)``."""
    if not model.is_fitted:
        raise StateError("model has no fitted normalization; train or load it first")
    x = np.atleast_2d(np.asarray(voltages, dtype=np.float64))
    return denormalize(model.forward(normalize(x, model.norm_in), Mode.INFER), model.norm_out)


def train(
    model: NetworkModel,
    train_set: Dataset,
    test_set: Dataset,
    config: TrainConfig,
) -> TrainingResult:
    """Fit ``model`` in place on ``train_set`` and keep its best state on ``test_set``.

    Normalization scales come from ``train_set`` only. Each epoch shuffles the
    training rows with a generator seeded from ``config.seed + 1``, runs Adam
    over minibatches at ``lr0 / (1 + decay * epoch)``, then scores the test set
    in infer mode on denormalized outputs. Training stops after
    ``config.max_epochs`` or once ``config.patience`` epochs pass without a
    test-MAPE improvement; the best snapshot is restored before returning.
    """
    if train_set is None or test_set is None or len(train_set) < 2 or len(test_set) < 1:
        raise DomainError("training needs at least two training rows and one test row")
    if config.batch_size < 2:
        raise DomainError("batch_size must be at least 2 for batch-norm statistics")
    width = train_set.inputs.shape[1]
    if width != model.input_dim or test_set.inputs.shape[1] != width:
        raise DomainError(
            f"model expects {model.input_dim} inputs, datasets provide "
            f"{width} and {test_set.inputs.shape[1]}"
        )
    if train_set.targets.shape[1] != model.output_dim:
        raise DomainError(
            f"model has {model.output_dim} outputs, targets have {train_set.targets.shape[1]}"
        )

    model.norm_in, model.norm_out = normalize_fit(train_set)
    x = normalize(train_set.inputs, model.norm_in)
    y = normalize(train_set.targets, model.norm_out)

    params = [array for _, array in model.parameters()]
    state = AdamState.for_parameters(params, config.beta1, config.beta2, config.eps_adam)
    shuffle_rng = np.random.default_rng(config.seed + 1)
    n = len(train_set)
    if n % config.batch_size == 1:
        logger.warning(
            "Dropping trailing minibatch of one row each epoch",
            rows=n,
            batch_size=config.batch_size,
        )

    result = TrainingResult(model=model)
    best = model.copy()
    best_test = math.inf
    waited = 0
    step = 0

    for epoch in range(config.max_epochs):
        lr = learning_rate(config.lr0, config.decay, epoch)
        order = shuffle_rng.permutation(n)
        loss_sum = 0.0
        seen = 0
        for start in range(0, n, config.batch_size):
            rows = order[start : start + config.batch_size]
            if len(rows) < 2:
                continue
            loss, grads = loss_and_gradients(model, x[rows], y[rows], config.eps_mape)
            step += 1
            adam_step(params, grads, state, step, lr)
            loss_sum += loss * len(rows)
            seen += len(rows)

        train_mape = loss_sum / seen
        test_mape = mape(test_set.targets, predict(model, test_set.inputs), test_set.floor)
        result.history.append(EpochRecord(epoch, train_mape, test_mape, lr))

        if not math.isfinite(train_mape):
            raise DomainError(f"training diverged at epoch {epoch}")
        if test_mape < best_test:
            best_test = test_mape
            best = model.copy()
            result.best_epoch = epoch
            waited = 0
        else:
            waited += 1

        if (epoch + 1) % config.log_every == 0:
            logger.info(
                "Epoch finished",
                epoch=epoch,
                train_mape=train_mape,
                test_mape=test_mape,
                lr=lr,
            )
        if waited >= config.patience:
            result.stopped_early = True
            logger.info("Stopping early", epoch=epoch, best_epoch=result.best_epoch)
            break

    if result.best_epoch >= 0:
        model.load_state_from(best)
    logger.info(
        "Training finished",
        epochs=len(result.history),
        best_epoch=result.best_epoch,
        best_test_mape=result.best_test_mape,
    )
    return result
