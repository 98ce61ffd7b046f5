"""Adam with a per-epoch inverse-time learning rate."""

from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ise_denoise.src.errors import DomainError


def learning_rate(lr0: float, decay: float, epoch: int) -> float:
    """``lr0 / (1 + decay * epoch)``, epochs counted from 0."""
    return lr0 / (1.0 + decay * epoch)


@dataclass
class AdamState:
    """First and second moment estimates, one pair per parameter array."""

    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    m: List[np.ndarray] = field(default_factory=list)
    v: List[np.ndarray] = field(default_factory=list)
    t: int = 0

    @classmethod
    def for_parameters(
        cls,
        params: Sequence[np.ndarray],
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ) -> "AdamState":
        return cls(
            beta1=beta1,
            beta2=beta2,
            eps=eps,
            m=[np.zeros_like(p, dtype=np.float64) for p in params],
            v=[np.zeros_like(p, dtype=np.float64) for p in params],
        )


def adam_step(
    params: Sequence[np.ndarray],
    grads: Sequence[np.ndarray],
    state: AdamState,
    t: int,
    lr_t: float,
) -> None:
    """Bias-corrected Adam update applied to ``params`` in place."""
    if t < 1:
        raise DomainError(f"adam step index must be >= 1, got {t}")
    if len(params) != len(grads) or len(params) != len(state.m):
        raise DomainError("params, grads and optimizer state must align")
    correction1 = 1.0 - state.beta1**t
    correction2 = 1.0 - state.beta2**t
    for index, (param, grad) in enumerate(zip(params, grads)):
        m = state.m[index]
        v = state.v[index]
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * np.square(grad)
        m_hat = m / correction1
        v_hat = v / correction2
        param -= lr_t * m_hat / (np.sqrt(v_hat) + state.eps)
    state.t = t
