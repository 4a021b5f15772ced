"""
Rank-one perturbations H + τ P_j* v v* P_j and the τ → ∞ limit.
"""

from typing import Union

import numpy as np
import scipy.linalg

from ..constants import TAU_LIMIT_FACTOR, UNIT_VECTOR_TOL
from ..exceptions import InvalidArgumentError
from ..spectra import operator_norm
from ..types import BlockHamiltonian, hermitian_part


def embed_block_vector(H: BlockHamiltonian, j: int, v: np.ndarray) -> np.ndarray:
    """
    The vector P_j* v in the full space.

    Raises:
        InvalidArgumentError: If v is not a unit vector of length N_j
    """
    block = H.block_slice(j)
    v = np.asarray(v)
    if v.shape != (block.stop - block.start,):
        raise InvalidArgumentError(
            f"Vector for block {j} must have length {block.stop - block.start}, got shape {v.shape}"
        )
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > UNIT_VECTOR_TOL:
        raise InvalidArgumentError(f"Perturbation vector must have unit norm, got {norm:.15g}")
    if H.symmetry.is_real and np.iscomplexobj(v) and np.any(v.imag != 0):
        raise InvalidArgumentError("Perturbation vector must be real in the orthogonal case")
    u = np.zeros(H.dim, dtype=np.result_type(H.matrix.dtype, v.dtype))
    u[block] = v
    return u


def rank_one_perturb(H: BlockHamiltonian, j: int, v: np.ndarray, tau: float) -> BlockHamiltonian:
    """
    Return H + τ P_j* v v* P_j.

    Args:
        H: Hamiltonian
        j: Block index
        v: Unit vector of length N_j
        tau: Coupling of the rank-one term

    Returns:
        Perturbed Hamiltonian with the same partition

    Raises:
        InvalidArgumentError: If v is not a unit vector of the right length
    """
    u = embed_block_vector(H, j, v)
    if tau == 0:
        return H
    perturbed = H.matrix + float(tau) * hermitian_part(np.outer(u, u.conj()))
    return H.with_matrix(perturbed)


def limit_coupling(H: Union[np.ndarray, BlockHamiltonian]) -> float:
    """Finite stand-in for τ → ∞: TAU_LIMIT_FACTOR · ||H||_op."""
    return TAU_LIMIT_FACTOR * operator_norm(H)


def compress_to_complement(matrix: Union[np.ndarray, BlockHamiltonian], u: np.ndarray) -> np.ndarray:
    """
    K_u = Q* M Q, the compression of M to the orthogonal complement of u.

    Q is an orthonormal basis of u^⊥, so K_u has dimension one less than M.
    """
    M = matrix.matrix if isinstance(matrix, BlockHamiltonian) else np.asarray(matrix)
    u = np.asarray(u)
    Q = scipy.linalg.null_space(u.conj()[None, :])
    return hermitian_part(Q.conj().T @ M @ Q)
