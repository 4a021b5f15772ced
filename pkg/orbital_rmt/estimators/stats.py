"""
Monte Carlo accumulators and exponential decay fits.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import InvalidArgumentError
from ..utils import tree_reduce


@dataclass(frozen=True)
class MCEstimate:
    """
    Running sums of a scalar Monte Carlo observable.

    Attributes:
        n: Number of samples
        total: Sum of the samples
        total_sq: Sum of their squares
    """

    n: int = 0
    total: float = 0.0
    total_sq: float = 0.0

    def __post_init__(self):
        if self.n < 0:
            raise InvalidArgumentError(f"Sample count must be >= 0, got {self.n}")

    @classmethod
    def single(cls, value: float) -> "MCEstimate":
        value = float(value)
        return cls(1, value, value * value)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "MCEstimate":
        """Accumulate values with the fixed pairwise tree."""
        if len(values) == 0:
            return cls()
        return tree_reduce(MCEstimate.merge, [cls.single(v) for v in values])

    def merge(self, other: "MCEstimate") -> "MCEstimate":
        return MCEstimate(self.n + other.n, self.total + other.total, self.total_sq + other.total_sq)

    @property
    def mean(self) -> float:
        if self.n == 0:
            raise InvalidArgumentError("Mean of an empty estimate")
        return self.total / self.n

    @property
    def stderr(self) -> float:
        """Standard error of the mean; 0 for a single sample."""
        if self.n < 2:
            return 0.0
        variance = max(self.total_sq / self.n - self.mean ** 2, 0.0) * self.n / (self.n - 1)
        return math.sqrt(variance / self.n)

    def scaled(self, factor: float) -> "MCEstimate":
        """The estimate of factor times the observable."""
        return MCEstimate(self.n, factor * self.total, factor * factor * self.total_sq)

    def to_dict(self) -> Dict[str, Any]:
        return {"mean": self.mean if self.n else None, "stderr": self.stderr, "n": self.n}


def binomial_stderr(p: float, n: int) -> float:
    if n < 1:
        raise InvalidArgumentError("Binomial standard error needs at least one trial")
    return math.sqrt(max(p * (1.0 - p), 0.0) / n)


@dataclass(frozen=True)
class DecayFit:
    """
    Least-squares fit log(mean) = intercept + slope * distance.

    A fit is degenerate when fewer than three distances carry a positive
    mean; its numbers are then None.
    """

    slope: Optional[float]
    intercept: Optional[float]
    r_squared: Optional[float]
    slope_stderr: Optional[float]
    window: Tuple[int, int]

    @property
    def degenerate(self) -> bool:
        return self.slope is None

    @property
    def rate(self) -> Optional[float]:
        """Decay rate -slope."""
        return None if self.slope is None else -self.slope

    def to_dict(self) -> Dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "slope_stderr": self.slope_stderr,
            "window": list(self.window),
            "degenerate": self.degenerate,
        }


def fit_exponential_decay(
    distances: Sequence[int],
    estimates: Sequence[MCEstimate],
    window: Optional[Tuple[int, int]] = None,
) -> DecayFit:
    """
    Fit the logarithm of the means against distance.

    Points are weighted by mean/stderr, the inverse of the standard error
    of log(mean), when every point in the window has a positive stderr.
    r² is that of the unweighted fit.

    Args:
        distances: Distances, one per estimate
        estimates: Monte Carlo means at those distances
        window: Inclusive distance range to fit; all distances by default

    Returns:
        DecayFit, degenerate if fewer than three usable points
    """
    x = np.asarray(distances, dtype=np.float64)
    if x.size != len(estimates):
        raise InvalidArgumentError("Need one estimate per distance")
    lo, hi = window if window is not None else (int(x.min()), int(x.max()))
    means = np.array([e.mean for e in estimates])
    errors = np.array([e.stderr for e in estimates])
    keep = (x >= lo) & (x <= hi) & (means > 0)
    if np.count_nonzero(keep) < 3:
        return DecayFit(None, None, None, None, (lo, hi))
    x, means, errors = x[keep], means[keep], errors[keep]
    y = np.log(means)

    unweighted = np.polyfit(x, y, 1)
    residual = y - np.polyval(unweighted, x)
    spread = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(residual ** 2)) / spread if spread > 0 else 1.0

    if np.all(errors > 0):
        coeffs, cov = np.polyfit(x, y, 1, w=means / errors, cov="unscaled")
    else:
        coeffs = unweighted
        dof = x.size - 2
        sigma2 = float(np.sum(residual ** 2)) / dof if dof > 0 else 0.0
        sxx = float(np.sum((x - x.mean()) ** 2))
        cov = np.array([[sigma2 / sxx if sxx > 0 else 0.0, 0.0], [0.0, 0.0]])
    return DecayFit(
        slope=float(coeffs[0]),
        intercept=float(coeffs[1]),
        r_squared=float(min(max(r_squared, 0.0), 1.0)),
        slope_stderr=float(math.sqrt(max(cov[0, 0], 0.0))),
        window=(lo, hi),
    )


def fit_power_law(lengths: Sequence[float], estimates: Sequence[MCEstimate]) -> DecayFit:
    """
    Fit log(mean) against log(length); the slope is the scaling exponent.

    The window field records the number of points used.
    """
    x = np.log(np.asarray(lengths, dtype=np.float64))
    means = np.array([e.mean for e in estimates])
    keep = means > 0
    if np.count_nonzero(keep) < 2:
        return DecayFit(None, None, None, None, (0, int(np.count_nonzero(keep))))
    x, y = x[keep], np.log(means[keep])
    coeffs = np.polyfit(x, y, 1)
    residual = y - np.polyval(coeffs, x)
    spread = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 - float(np.sum(residual ** 2)) / spread if spread > 0 else 1.0
    dof = x.size - 2
    sxx = float(np.sum((x - x.mean()) ** 2))
    slope_stderr = math.sqrt(float(np.sum(residual ** 2)) / dof / sxx) if dof > 0 and sxx > 0 else 0.0
    return DecayFit(float(coeffs[0]), float(coeffs[1]), float(min(max(r_squared, 0.0), 1.0)), slope_stderr, (0, x.size))
