"""
Dense Hermitian eigensolves and eigenvalue counting on open intervals.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from ..constants import ENDPOINT_NUDGE_RTOL, INTERLACING_RTOL
from ..exceptions import AccuracyError, InvalidArgumentError
from ..types import BlockHamiltonian, Interval, require_hermitian

MatrixLike = Union[np.ndarray, BlockHamiltonian]
IntervalLike = Union[Interval, Sequence[float]]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Sorted eigenvalues, optionally with eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None

    def __post_init__(self):
        values = np.asarray(self.eigenvalues, dtype=np.float64)
        if values.ndim != 1:
            raise InvalidArgumentError(f"Eigenvalues must be one-dimensional, got shape {values.shape}")
        if values.size > 1 and np.any(np.diff(values) < 0):
            raise InvalidArgumentError("Eigenvalues must be sorted in nondecreasing order")
        values.setflags(write=False)
        object.__setattr__(self, "eigenvalues", values)
        if self.eigenvectors is not None and self.eigenvectors.shape != (values.size, values.size):
            raise InvalidArgumentError("Eigenvector matrix does not match the number of eigenvalues")

    def __len__(self) -> int:
        return self.eigenvalues.size

    @property
    def spectral_radius(self) -> float:
        """max |λ|, the operator norm of the underlying Hermitian matrix."""
        return float(np.max(np.abs(self.eigenvalues))) if len(self) else 0.0


def as_matrix(M: MatrixLike) -> np.ndarray:
    return M.matrix if isinstance(M, BlockHamiltonian) else np.asarray(M)


def as_interval(I: IntervalLike) -> Interval:
    return I if isinstance(I, Interval) else Interval.from_sequence(I)


def _values(spectrum: Union[Spectrum, np.ndarray, Sequence[float]]) -> np.ndarray:
    return spectrum.eigenvalues if isinstance(spectrum, Spectrum) else np.asarray(spectrum, dtype=np.float64)


def eig_hermitian(M: MatrixLike, keep_vectors: bool = False) -> Spectrum:
    """
    Full spectrum of a Hermitian matrix.

    Args:
        M: Hermitian matrix or BlockHamiltonian
        keep_vectors: Also return the eigenvectors

    Returns:
        Spectrum with eigenvalues in nondecreasing order

    Raises:
        InvalidArgumentError: If M is not Hermitian within 1e-12 * max|M|
    """
    matrix = require_hermitian(as_matrix(M), "matrix")
    if keep_vectors:
        values, vectors = scipy.linalg.eigh(matrix, check_finite=False)
        return Spectrum(values, vectors)
    return Spectrum(scipy.linalg.eigh(matrix, eigvals_only=True, check_finite=False))


def count_in_interval(spectrum: Union[Spectrum, np.ndarray], I: IntervalLike) -> int:
    """
    Number of eigenvalues strictly inside I; endpoints are excluded.
    """
    interval = as_interval(I)
    values = _values(spectrum)
    upper = np.searchsorted(values, interval.upper, side="left")
    lower = np.searchsorted(values, interval.lower, side="right")
    return int(max(upper - lower, 0))


def count_many(spectrum: Union[Spectrum, np.ndarray], intervals: Sequence[IntervalLike]) -> np.ndarray:
    """count_in_interval for several intervals at once."""
    values = _values(spectrum)
    bounds = np.array([as_interval(I).to_list() for I in intervals], dtype=np.float64)
    upper = np.searchsorted(values, bounds[:, 1], side="left")
    lower = np.searchsorted(values, bounds[:, 0], side="right")
    return np.maximum(upper - lower, 0)


def nudge_interval(
    spectrum: Union[Spectrum, np.ndarray],
    I: IntervalLike,
    scale: float,
    max_steps: int = 1000,
) -> Interval:
    """
    Shift I right in steps of 1e-9 * scale until no eigenvalue lies within
    half a step of either endpoint.

    Raises:
        AccuracyError: If no clean position is found within max_steps
    """
    interval = as_interval(I)
    values = _values(spectrum)
    step = ENDPOINT_NUDGE_RTOL * max(float(scale), 1.0)
    for _ in range(max_steps):
        ends = np.array(interval.to_list())
        if values.size == 0 or np.min(np.abs(values[:, None] - ends[None, :])) > 0.5 * step:
            return interval
        interval = interval.shifted(step)
    raise AccuracyError(f"Could not move {interval} off the spectrum in {max_steps} steps")


def smoothed_count(spectrum: Union[Spectrum, np.ndarray], I: IntervalLike, eta: float) -> float:
    """
    η-smoothed count (1/π) Σ_μ [arctan((b - μ)/η) - arctan((a - μ)/η)].

    This is ∫_I (dλ/π) Im tr(H - λ - iη)⁻¹ in closed form.
    """
    if eta <= 0:
        raise InvalidArgumentError(f"eta must be positive, got {eta}")
    interval = as_interval(I)
    values = _values(spectrum)
    total = np.arctan((interval.upper - values) / eta) - np.arctan((interval.lower - values) / eta)
    return float(np.sum(total) / np.pi)


def operator_norm(M: MatrixLike) -> float:
    """Largest singular value."""
    matrix = as_matrix(M)
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(matrix, check_finite=False)[0])


def check_interlacing(
    before: Union[Spectrum, np.ndarray],
    after: Union[Spectrum, np.ndarray],
    rtol: float = INTERLACING_RTOL,
) -> bool:
    """
    Check λ_i(before) <= λ_i(after) <= λ_{i+1}(before) for all i.

    This is the pattern of a positive rank-one update; for a negative one
    swap the arguments. The tolerance is rtol times the largest |λ| of
    either spectrum.

    Raises:
        InvalidArgumentError: If the spectra have different lengths
    """
    lo, hi = _values(before), _values(after)
    if lo.size != hi.size:
        raise InvalidArgumentError(f"Spectra differ in dimension: {lo.size} vs {hi.size}")
    if lo.size == 0:
        return True
    tol = rtol * max(float(np.max(np.abs(lo))), float(np.max(np.abs(hi))), 1e-300)
    lower_ok = bool(np.all(lo - tol <= hi))
    upper_ok = bool(np.all(hi[:-1] <= lo[1:] + tol))
    return lower_ok and upper_ok


def interlacing_violation(before: Union[Spectrum, np.ndarray], after: Union[Spectrum, np.ndarray]) -> Tuple[float, float]:
    """Largest violations of the lower and upper interlacing inequalities."""
    lo, hi = _values(before), _values(after)
    lower = float(np.max(lo - hi)) if lo.size else 0.0
    upper = float(np.max(hi[:-1] - lo[1:])) if lo.size > 1 else 0.0
    return max(lower, 0.0), max(upper, 0.0)
