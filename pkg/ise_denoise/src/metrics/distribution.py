"""Distribution statistics of per-sample errors and the normal tail probability."""

import math
from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict

from ise_denoise.src.errors import DomainError

DEFAULT_TAIL_THRESHOLD = 5.0


class DistributionSummary(BaseModel):
    """Mean, sample sd, five-number summary and histogram of a vector."""

    model_config = ConfigDict(frozen=True)

    mean: float
    sd: float
    q0: float
    q1: float
    q2: float
    q3: float
    q4: float
    bin_edges: List[float]
    counts: List[int]
    tail_prob_at_5pct: float
    n: int

    @property
    def quartiles(self) -> tuple[float, float, float, float, float]:
        return (self.q0, self.q1, self.q2, self.q3, self.q4)


def normal_upper_tail(mean: float, sd: float, threshold: float) -> float:
    """``1 - Phi((threshold - mean) / sd)`` evaluated as ``erfc(z / sqrt 2) / 2``."""
    if not sd > 0:
        raise DomainError(f"standard deviation must be positive, got {sd}")
    z = (threshold - mean) / sd
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def summarize_distribution(
    values,
    bins: int = 20,
    threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> DistributionSummary:
    """Summarize ``values`` (percent errors in practice).

    Quantiles interpolate linearly between order statistics. The histogram
    has ``bins`` equal-width bins over [min, max]. The tail probability is the
    chance of exceeding ``threshold`` under the normal fitted by mean and sample
    sd; a zero sd degenerates to 0 or 1.
    """
    values = np.asarray(values, dtype=np.float64).reshape(-1)
    if values.size == 0:
        raise DomainError("cannot summarize an empty vector")
    if bins < 1:
        raise DomainError(f"bins must be >= 1, got {bins}")

    mean = float(values.mean())
    sd = float(values.std(ddof=1)) if values.size > 1 else 0.0
    q0, q1, q2, q3, q4 = (
        float(q) for q in np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0])
    )
    counts, edges = np.histogram(values, bins=bins, range=(q0, q4))
    if sd > 0:
        tail = normal_upper_tail(mean, sd, threshold)
    else:
        tail = 1.0 if mean > threshold else 0.0

    return DistributionSummary(
        mean=mean,
        sd=sd,
        q0=q0,
        q1=q1,
        q2=q2,
        q3=q3,
        q4=q4,
        bin_edges=[float(edge) for edge in edges],
        counts=[int(count) for count in counts],
        tail_prob_at_5pct=tail,
        n=int(values.size),
    )
