"""Degree-2 multivariate polynomial regression baseline."""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from ise_denoise.src.errors import DomainError, RankError
from ise_denoise.src.neuralnet.dataset import Dataset

DEFAULT_RIDGE = 1e-8


def n_monomials(n_inputs: int) -> int:
    return 1 + n_inputs + n_inputs * (n_inputs + 1) // 2


def monomials(voltages) -> np.ndarray:
    """Columns ``1, V_j, V_j V_k (j <= k)`` in that order."""
    v = np.atleast_2d(np.asarray(voltages, dtype=np.float64))
    width = v.shape[1]
    columns = [np.ones(v.shape[0])]
    columns.extend(v[:, j] for j in range(width))
    columns.extend(v[:, j] * v[:, k] for j, k in combinations_with_replacement(range(width), 2))
    return np.column_stack(columns)


@dataclass(frozen=True, eq=False)
class QuadraticModel:
    """``coefficients[o]`` weights the monomials for output ``o``."""

    coefficients: np.ndarray
    n_inputs: int = field(init=False, default=0)

    def __post_init__(self) -> None:
        coefficients = np.array(self.coefficients, dtype=np.float64)
        if coefficients.ndim != 2:
            raise DomainError("quadratic coefficients must be a matrix")
        inputs = 0
        while n_monomials(inputs) < coefficients.shape[1]:
            inputs += 1
        if n_monomials(inputs) != coefficients.shape[1]:
            raise DomainError(
                f"{coefficients.shape[1]} coefficients is not a full quadratic basis"
            )
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "n_inputs", inputs)


def fit_quadratic(train: Dataset, ridge: float = DEFAULT_RIDGE) -> QuadraticModel:
    """Per-output least squares on the quadratic monomials of the current voltages.

    Solves the normal equations with ``ridge * I`` added to the Gram matrix.
    """
    design = monomials(train.voltages)
    terms = design.shape[1]
    if design.shape[0] < terms:
        raise DomainError(f"quadratic fit needs at least {terms} rows, got {design.shape[0]}")
    if ridge < 0:
        raise DomainError(f"ridge must be >= 0, got {ridge}")
    gram = design.T @ design + ridge * np.eye(terms)
    if ridge == 0 and np.linalg.matrix_rank(gram) < terms:
        raise RankError("quadratic design matrix is rank deficient")
    try:
        solution = np.linalg.solve(gram, design.T @ train.targets)
    except np.linalg.LinAlgError as e:
        raise RankError(f"quadratic normal equations are singular: {e}") from e
    return QuadraticModel(solution.T)


def predict_quadratic(model: QuadraticModel, voltages) -> np.ndarray:
    """Predictions for one voltage row (vector result) or a matrix of rows."""
    v = np.asarray(voltages, dtype=np.float64)
    single = v.ndim == 1
    v = np.atleast_2d(v)[:, : model.n_inputs]
    if v.shape[1] != model.n_inputs:
        raise DomainError(f"expected {model.n_inputs} voltages per row, got {v.shape[1]}")
    out = monomials(v) @ model.coefficients.T
    return out[0] if single else out
