"""
Gaussian building blocks: i.i.d. real and complex matrices, GOE/GUE,
uniform vectors on the unit sphere and Haar-distributed rotations.

Complex Gaussians have independent real and imaginary parts of equal
variance; the declared variance is E|X|^2. GOE/GUE are built as
(X + X*)/sqrt(2N) from a unit-variance X, which makes them exactly
symmetric (Hermitian) and gives densities proportional to
exp(-(N/4) tr V^2) and exp(-(N/2) tr V^2).
"""

import math

import numpy as np
import scipy.stats

from ..exceptions import InvalidArgumentError
from ..types import SymmetryClass
from .rng import RngLike, resolve_generator


def _check_size(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _check_variance(variance: float) -> float:
    variance = float(variance)
    if not variance > 0 or not math.isfinite(variance):
        raise InvalidArgumentError(f"Variance per entry must be positive and finite, got {variance}")
    return variance


def sample_real_gaussian_matrix(rows: int, cols: int, variance_per_entry: float, rng: RngLike) -> np.ndarray:
    """
    Sample a rows x cols matrix of i.i.d. real N(0, variance_per_entry) entries.

    Raises:
        InvalidArgumentError: On nonpositive sizes or variance
    """
    rows, cols = _check_size("rows", rows), _check_size("cols", cols)
    variance = _check_variance(variance_per_entry)
    gen = resolve_generator(rng)
    return gen.standard_normal((rows, cols)) * math.sqrt(variance)


def sample_complex_gaussian_matrix(rows: int, cols: int, variance_per_entry: float, rng: RngLike) -> np.ndarray:
    """
    Sample a rows x cols matrix of i.i.d. complex Gaussians.

    Args:
        rows: Number of rows
        cols: Number of columns
        variance_per_entry: E|X_ij|^2; real and imaginary parts each get half
        rng: Stream or generator

    Returns:
        Complex128 matrix

    Raises:
        InvalidArgumentError: On nonpositive sizes or variance
    """
    rows, cols = _check_size("rows", rows), _check_size("cols", cols)
    variance = _check_variance(variance_per_entry)
    gen = resolve_generator(rng)
    parts = gen.standard_normal((2, rows, cols)) * math.sqrt(variance / 2.0)
    return parts[0] + 1j * parts[1]


def sample_hopping_block(N: int, variance_per_entry: float, symmetry: SymmetryClass, rng: RngLike) -> np.ndarray:
    """Square block with i.i.d. entries, real or complex by symmetry class."""
    if SymmetryClass.from_str(symmetry).is_real:
        return sample_real_gaussian_matrix(N, N, variance_per_entry, rng)
    return sample_complex_gaussian_matrix(N, N, variance_per_entry, rng)


def sample_goe(N: int, rng: RngLike) -> np.ndarray:
    """
    Sample an N x N GOE matrix.

    Var(M_ii) = 2/N and Var(M_ij) = 1/N off the diagonal; M equals its
    transpose exactly.

    Raises:
        InvalidArgumentError: If N < 1
    """
    N = _check_size("N", N)
    X = sample_real_gaussian_matrix(N, N, 1.0, rng)
    return (X + X.T) / math.sqrt(2.0 * N)


def sample_gue(N: int, rng: RngLike) -> np.ndarray:
    """
    Sample an N x N GUE matrix.

    Real diagonal with Var(M_ii) = 1/N, E|M_ij|^2 = 1/N off the diagonal;
    M equals its conjugate transpose exactly.

    Raises:
        InvalidArgumentError: If N < 1
    """
    N = _check_size("N", N)
    X = sample_complex_gaussian_matrix(N, N, 1.0, rng)
    return (X + X.conj().T) / math.sqrt(2.0 * N)


def sample_gaussian_ensemble(N: int, symmetry: SymmetryClass, rng: RngLike) -> np.ndarray:
    """GOE for the orthogonal class, GUE for the unitary class."""
    if SymmetryClass.from_str(symmetry).is_real:
        return sample_goe(N, rng)
    return sample_gue(N, rng)


def sample_sphere(N: int, symmetry: SymmetryClass, rng: RngLike) -> np.ndarray:
    """
    Sample a vector uniformly distributed on the unit sphere of R^N or C^N.

    Raises:
        InvalidArgumentError: If N < 1
    """
    N = _check_size("N", N)
    if SymmetryClass.from_str(symmetry).is_real:
        v = sample_real_gaussian_matrix(N, 1, 1.0, rng)[:, 0]
    else:
        v = sample_complex_gaussian_matrix(N, 1, 1.0, rng)[:, 0]
    return v / np.linalg.norm(v)


def sample_haar(N: int, symmetry: SymmetryClass, rng: RngLike) -> np.ndarray:
    """
    Sample a Haar-distributed orthogonal (orthogonal class) or unitary
    (unitary class) N x N matrix.

    Raises:
        InvalidArgumentError: If N < 1
    """
    N = _check_size("N", N)
    gen = resolve_generator(rng)
    real = SymmetryClass.from_str(symmetry).is_real
    if N == 1:
        if real:
            return np.array([[1.0 if gen.integers(2) == 0 else -1.0]])
        return np.array([[np.exp(2j * np.pi * gen.random())]])
    group = scipy.stats.ortho_group if real else scipy.stats.unitary_group
    return group.rvs(N, random_state=gen)
