"""
Resolvent blocks G_λ(x, y) = P_x (H - λ)⁻¹ P_y* by dense solves.
"""

import math
import warnings
from typing import Sequence, Union

import numpy as np
import scipy.linalg

from ..constants import SINGULAR_DISTANCE, UNIT_VECTOR_TOL
from ..exceptions import InvalidArgumentError, SingularityError
from ..types import BlockHamiltonian

BlockKey = Union[int, Sequence[int]]


def spectral_distance(matrix: np.ndarray, energy: float) -> float:
    """min |spec(M) - λ| for a Hermitian M, the smallest singular value of M - λ."""
    eigenvalues = scipy.linalg.eigvalsh(matrix, check_finite=False)
    return float(np.min(np.abs(eigenvalues - energy)))


def _solve_shifted(matrix: np.ndarray, energy: float, rhs: np.ndarray) -> np.ndarray:
    """
    Solve (M - λ) X = rhs.

    Raises:
        SingularityError: If λ lies within SINGULAR_DISTANCE of the spectrum
            or the solve reports ill-conditioning
    """
    gap = spectral_distance(matrix, energy)
    if gap < SINGULAR_DISTANCE:
        raise SingularityError(f"lambda lies {gap:.3e} from the spectrum of H", energy=energy)
    shifted = matrix - energy * np.eye(matrix.shape[0], dtype=matrix.dtype)
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(shifted, rhs, assume_a="her", check_finite=False)
        except (scipy.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as e:
            raise SingularityError(f"H - lambda is numerically singular ({e})", energy=energy)


def resolvent_matrix(H: Union[BlockHamiltonian, np.ndarray], energy: float) -> np.ndarray:
    """
    Full resolvent (H - λ)⁻¹.

    Raises:
        SingularityError: If λ is numerically an eigenvalue
    """
    matrix = H.matrix if isinstance(H, BlockHamiltonian) else np.asarray(H)
    return _solve_shifted(matrix, energy, np.eye(matrix.shape[0], dtype=matrix.dtype))


def resolvent_columns(H: BlockHamiltonian, energy: float, y: BlockKey) -> np.ndarray:
    """
    The columns (H - λ)⁻¹ P_y* for every row block, from one factorization.

    Returns:
        dim x N_y matrix
    """
    cols = H.block_slice(H.block_index(y))
    rhs = np.zeros((H.dim, cols.stop - cols.start), dtype=H.matrix.dtype)
    rhs[cols, :] = np.eye(cols.stop - cols.start)
    return _solve_shifted(H.matrix, energy, rhs)


def resolvent_apply(H: BlockHamiltonian, energy: float, y: BlockKey, v: np.ndarray) -> np.ndarray:
    """(H - λ)⁻¹ P_y* v as a full-length vector: one right-hand side."""
    cols = H.block_slice(H.block_index(y))
    rhs = np.zeros(H.dim, dtype=np.result_type(H.matrix.dtype, np.asarray(v).dtype))
    rhs[cols] = v
    matrix = H.matrix.astype(rhs.dtype, copy=False)
    return _solve_shifted(matrix, energy, rhs)


def resolvent_block(H: BlockHamiltonian, energy: float, x: BlockKey, y: BlockKey) -> np.ndarray:
    """
    Block P_x (H - λ)⁻¹ P_y*.

    Args:
        H: Hamiltonian
        energy: Real spectral parameter λ, not an eigenvalue of H
        x: Row block index or site
        y: Column block index or site

    Returns:
        N_x x N_y matrix

    Raises:
        SingularityError: If λ is numerically an eigenvalue
    """
    columns = resolvent_columns(H, energy, y)
    return columns[H.block_slice(H.block_index(x)), :]


def check_fractional_exponent(s: float) -> float:
    s = float(s)
    if not 0.0 < s < 1.0:
        raise InvalidArgumentError(f"Fractional moment exponent must satisfy 0 < s < 1, got s={s}")
    return s


def check_unit_vector(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v)
    norm = float(np.linalg.norm(v))
    if not math.isfinite(norm) or abs(norm - 1.0) > UNIT_VECTOR_TOL:
        raise InvalidArgumentError(f"Probe vector must have unit norm, got {norm:.15g}")
    return v


def fractional_moment_sample(
    H: BlockHamiltonian,
    energy: float,
    x: BlockKey,
    y: BlockKey,
    v: np.ndarray,
    s: float,
) -> float:
    """
    ||G_λ(x, y) v||^s for one realization.

    Raises:
        InvalidArgumentError: If s is outside (0, 1) or v is not a unit vector
        SingularityError: If λ is numerically an eigenvalue
    """
    s = check_fractional_exponent(s)
    v = check_unit_vector(v)
    column = resolvent_apply(H, energy, y, v)
    return float(np.linalg.norm(column[H.block_slice(H.block_index(x))]) ** s)
