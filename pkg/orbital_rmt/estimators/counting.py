"""
Eigenvalue-counting experiments: Wegner and Minami estimates, the density
of states, the band-matrix Wegner scan and the complementary lower bound.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..ensembles import BandModelSpec, RngStream, ShapeFunction
from ..exceptions import InvalidArgumentError
from ..operators import second_moment_exact
from ..spectra import as_interval, count_in_interval, count_many
from ..types import Interval
from ..utils.logging import get_logger
from .sampling import ModelSpec, check_sample_count, sample_spectra, total_dimension
from .stats import DecayFit, MCEstimate, fit_power_law

logger = get_logger(__name__)


@dataclass(frozen=True)
class WegnerResult:
    """
    E N(H, I) and the ratio E N(H, I)/(Σ N_j |I|).
    """

    interval: Interval
    estimate: MCEstimate
    ratio: MCEstimate

    def to_dict(self) -> Dict[str, Any]:
        return {"interval": self.interval.to_list(), "count": self.estimate.to_dict(), "ratio": self.ratio.to_dict()}


@dataclass(frozen=True)
class MinamiResult:
    """
    Factorial moment E Π_{ℓ<m}(N - ℓ) and tail probability P{N >= m}.

    count and count_square are E N and E N² over the same realizations.
    """

    interval: Interval
    m: int
    factorial_moment: MCEstimate
    tail_prob: MCEstimate
    count: MCEstimate
    count_square: MCEstimate

    @property
    def jensen_gap(self) -> float:
        """E N² - (E N)², nonnegative on every sample."""
        return self.count_square.mean - self.count.mean ** 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "interval": self.interval.to_list(),
            "m": self.m,
            "factorial_moment": self.factorial_moment.to_dict(),
            "tail_prob": self.tail_prob.to_dict(),
            "count": self.count.to_dict(),
            "jensen_gap": self.jensen_gap,
        }


@dataclass(frozen=True)
class MinamiScaling:
    results: Tuple[MinamiResult, ...]
    fit: DecayFit

    @property
    def exponent(self) -> Optional[float]:
        """Fitted power of |I| in the factorial moment."""
        return self.fit.slope


@dataclass(frozen=True)
class DosHistogram:
    """
    Per-bin estimates of E N(H, bin)/(Σ N_j · width).

    Attributes:
        edges: Bin edges
        density: One estimate per bin
        sum_check: Σ density · width; 1 when every eigenvalue was binned
    """

    edges: Tuple[float, ...]
    density: Tuple[MCEstimate, ...]
    sum_check: float

    @property
    def centers(self) -> np.ndarray:
        edges = np.asarray(self.edges)
        return 0.5 * (edges[:-1] + edges[1:])


@dataclass(frozen=True)
class BandWegnerPoint:
    W: int
    estimate: MCEstimate
    ratio: MCEstimate


@dataclass(frozen=True)
class LowerBoundResult:
    """
    The best length-t window over [-2 s₂, 2 s₂].

    Attributes:
        s2: √(E tr H²/Σ N_j), exact when the model allows, else empirical
        s2_empirical: The same quantity estimated from the sample
        found_interval: Window with the largest mean count
        empirical_mean: Count estimate on that window
        bound_value: Σ N_j · t/(10 s₂)
        windows: Every scanned window with its estimate
    """

    s2: float
    s2_empirical: float
    found_interval: Interval
    empirical_mean: MCEstimate
    bound_value: float
    windows: Tuple[Tuple[Interval, MCEstimate], ...]

    @property
    def satisfied(self) -> bool:
        """Best mean reaches the bound within three standard errors."""
        return self.empirical_mean.mean >= self.bound_value - 3.0 * self.empirical_mean.stderr


def _counts(spectra: Sequence[np.ndarray], interval: Interval) -> np.ndarray:
    return np.array([count_in_interval(values, interval) for values in spectra], dtype=np.float64)


def _falling_factorial(counts: np.ndarray, m: int) -> np.ndarray:
    result = np.ones_like(counts)
    for ell in range(m):
        result = result * (counts - ell)
    return result


def run_wegner_experiment(
    spec: ModelSpec,
    I: Any,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> WegnerResult:
    """
    Estimate E N(H, I) by exact eigensolves.

    Args:
        spec: Deformed block, orbital or band model
        I: Counting interval
        n_samples: Number of realizations, at least 2
        rng: Experiment stream; realization i uses rng.substream(i)
        workers: Process count, see resolve_workers

    Returns:
        WegnerResult with the mean count and the normalized ratio
    """
    n_samples = check_sample_count(n_samples)
    interval = as_interval(I)
    spectra = sample_spectra(spec, n_samples, rng, workers)
    estimate = MCEstimate.from_values(_counts(spectra, interval))
    ratio = estimate.scaled(1.0 / (total_dimension(spec) * interval.length))
    logger.debug(f"Wegner on {interval}: mean {estimate.mean:.4g} +- {estimate.stderr:.2g}")
    return WegnerResult(interval, estimate, ratio)


def _minami_from_spectra(spectra: Sequence[np.ndarray], interval: Interval, m: int) -> MinamiResult:
    counts = _counts(spectra, interval)
    return MinamiResult(
        interval=interval,
        m=m,
        factorial_moment=MCEstimate.from_values(_falling_factorial(counts, m)),
        tail_prob=MCEstimate.from_values((counts >= m).astype(np.float64)),
        count=MCEstimate.from_values(counts),
        count_square=MCEstimate.from_values(counts * counts),
    )


def _check_order(m: int) -> int:
    if isinstance(m, bool) or int(m) != m or m < 1:
        raise InvalidArgumentError(f"Minami order m must be an integer >= 1, got {m!r}")
    return int(m)


def run_minami_experiment(
    spec: ModelSpec,
    I: Any,
    m: int,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> MinamiResult:
    """
    Estimate the m-th factorial moment of N(H, I) and P{N(H, I) >= m}.

    With m = 1 and the same rng this reproduces run_wegner_experiment's
    mean exactly.
    """
    m = _check_order(m)
    n_samples = check_sample_count(n_samples)
    spectra = sample_spectra(spec, n_samples, rng, workers)
    return _minami_from_spectra(spectra, as_interval(I), m)


def run_minami_scaling(
    spec: ModelSpec,
    intervals: Sequence[Any],
    m: int,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> MinamiScaling:
    """
    One sample of realizations counted on several intervals, with the
    log-log fit of the factorial moment against |I|.
    """
    m = _check_order(m)
    n_samples = check_sample_count(n_samples)
    if len(intervals) < 2:
        raise InvalidArgumentError("The scaling fit needs at least two intervals")
    spectra = sample_spectra(spec, n_samples, rng, workers)
    results = tuple(_minami_from_spectra(spectra, as_interval(I), m) for I in intervals)
    fit = fit_power_law([r.interval.length for r in results], [r.factorial_moment for r in results])
    return MinamiScaling(results, fit)


def run_dos_histogram(
    spec: ModelSpec,
    edges: Sequence[float],
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> DosHistogram:
    """
    Histogram estimate of the density of states.

    Args:
        spec: Model to sample
        edges: Increasing bin edges covering the spectrum
        n_samples: Number of realizations
        rng: Experiment stream
        workers: Process count

    Returns:
        DosHistogram; a sum_check below 1 means eigenvalues fell outside
    """
    n_samples = check_sample_count(n_samples)
    edges = np.asarray(edges, dtype=np.float64)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise InvalidArgumentError("Bin edges must be a strictly increasing list of at least two values")
    widths = np.diff(edges)
    dim = total_dimension(spec)
    spectra = sample_spectra(spec, n_samples, rng, workers)
    per_sample = np.array([np.histogram(values, bins=edges)[0] for values in spectra], dtype=np.float64)
    per_sample /= dim * widths[None, :]
    density = tuple(MCEstimate.from_values(per_sample[:, b]) for b in range(widths.size))
    sum_check = float(sum(d.mean * w for d, w in zip(density, widths)))
    if abs(sum_check - 1.0) > 1e-9:
        logger.warning(f"Histogram holds a fraction {sum_check:.6f} of the spectrum; widen the bins")
    return DosHistogram(tuple(float(e) for e in edges), density, sum_check)


def semicircle_density(x: Any) -> np.ndarray:
    """Wigner's semicircle (2π)⁻¹ √((4 - x²)₊)."""
    x = np.asarray(x, dtype=np.float64)
    return np.sqrt(np.clip(4.0 - x * x, 0.0, None)) / (2.0 * np.pi)


def semicircle_bin_average(edges: Sequence[float]) -> np.ndarray:
    """Semicircle mass of each bin divided by its width."""
    edges = np.asarray(edges, dtype=np.float64)
    x = np.clip(edges, -2.0, 2.0)
    cdf = 0.5 + (x * np.sqrt(4.0 - x * x) / 4.0 + np.arcsin(x / 2.0)) / np.pi
    return np.diff(cdf) / np.diff(edges)


def check_band_divisibility(L: int, W: int) -> None:
    if (2 * L + 1) % W:
        raise InvalidArgumentError(f"W must divide 2L+1 = {2 * L + 1}, got W={W}")


def check_band_width(L: int, W: int) -> None:
    if isinstance(W, bool) or int(W) != W or not 1 <= W <= 2 * L:
        raise InvalidArgumentError(f"W must be an integer in [1, 2L] = [1, {2 * L}], got W={W!r}")


def run_band_wegner_experiment(
    spec: BandModelSpec,
    W_scan: Sequence[int],
    I: Any,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> List[BandWegnerPoint]:
    """
    E N(H_L, I)/((2L+1)^d |I|) for sharp-cutoff band matrices across bandwidths.

    Bandwidth k of the scan uses rng.substream(k).
    """
    interval = as_interval(I)
    points = []
    for k, W in enumerate(W_scan):
        check_band_width(spec.box.L, W)
        band = BandModelSpec(spec.box, ShapeFunction.sharp_cutoff(W, spec.box.d), spec.symmetry)
        result = run_wegner_experiment(band, interval, n_samples, rng.substream(k), workers)
        points.append(BandWegnerPoint(int(W), result.estimate, result.ratio))
    return points


def check_lower_bound(
    spec: ModelSpec,
    t: Optional[float],
    n_samples: int,
    rng: RngStream,
    t_over_s2: float = 0.25,
    workers: Optional[int] = None,
) -> LowerBoundResult:
    """
    Look for a window of length t in [-2 s₂, 2 s₂] with E N(H, I) >= Σ N_j t/(10 s₂).

    Windows start at -2 s₂ and advance by t/4. s₂ is exact when the model
    has a closed-form second moment, else it comes from the sample.

    Args:
        spec: Model to sample
        t: Window length, below s₂; None means t_over_s2 * s₂
        n_samples: Number of realizations
        rng: Experiment stream
        t_over_s2: Window length relative to s₂ when t is None
        workers: Process count

    Raises:
        InvalidArgumentError: If t is not in (0, s₂)
    """
    n_samples = check_sample_count(n_samples)
    dim = total_dimension(spec)
    spectra = sample_spectra(spec, n_samples, rng, workers)
    trace_square = MCEstimate.from_values([float(np.sum(values ** 2)) for values in spectra])
    s2_empirical = math.sqrt(trace_square.mean / dim)
    try:
        s2 = math.sqrt(second_moment_exact(spec) / dim)
    except InvalidArgumentError:
        s2 = s2_empirical

    if t is None:
        t = t_over_s2 * s2
    t = float(t)
    if not 0.0 < t < s2:
        raise InvalidArgumentError(f"Window length must satisfy 0 < t < s2 = {s2:.6g}, got t={t}")

    stride = t / 4.0
    n_windows = int(math.floor((4.0 * s2 - t) / stride + 1e-9)) + 1
    windows = [Interval(-2.0 * s2 + k * stride, -2.0 * s2 + k * stride + t) for k in range(n_windows)]
    counts = np.array([count_many(values, windows) for values in spectra], dtype=np.float64)
    estimates = [MCEstimate.from_values(counts[:, k]) for k in range(n_windows)]
    best = int(np.argmax([e.mean for e in estimates]))
    return LowerBoundResult(
        s2=s2,
        s2_empirical=s2_empirical,
        found_interval=windows[best],
        empirical_mean=estimates[best],
        bound_value=dim * t / (10.0 * s2),
        windows=tuple(zip(windows, estimates)),
    )
