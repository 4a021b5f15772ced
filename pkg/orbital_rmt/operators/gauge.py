"""
Local gauge transformations H -> U H U* with U = ⊕_x U(x) block diagonal.
"""

from typing import Sequence, Tuple

import numpy as np
import scipy.linalg

from ..constants import UNIT_VECTOR_TOL
from ..ensembles import RngLike, resolve_generator, sample_haar
from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, SymmetryClass, hermitian_part

BlockGauge = Tuple[np.ndarray, ...]


def sample_block_gauge(block_sizes: Sequence[int], symmetry: SymmetryClass, rng: RngLike) -> BlockGauge:
    """One Haar rotation per block, orthogonal or unitary by symmetry class."""
    gen = resolve_generator(rng)
    return tuple(sample_haar(int(n), symmetry, gen) for n in block_sizes)


def gauge_transform(H: BlockHamiltonian, gauge: Sequence[np.ndarray]) -> BlockHamiltonian:
    """
    Conjugate H by the block-diagonal U built from gauge.

    Args:
        H: Hamiltonian
        gauge: One N_j x N_j orthogonal (orthogonal class) or unitary block
            per block of H

    Returns:
        U H U* with the partition and labels of H

    Raises:
        InvalidArgumentError: If the blocks do not match H's partition, are
            not unitary, or are complex in the orthogonal case
    """
    sizes = H.block_sizes
    if len(gauge) != len(sizes):
        raise InvalidArgumentError(f"Gauge has {len(gauge)} blocks, H has {len(sizes)}")
    for j, (U, n) in enumerate(zip(gauge, sizes)):
        U = np.asarray(U)
        if U.shape != (n, n):
            raise InvalidArgumentError(f"Gauge block {j} must be {n} x {n}, got shape {U.shape}")
        if np.max(np.abs(U.conj().T @ U - np.eye(n))) > UNIT_VECTOR_TOL:
            raise InvalidArgumentError(f"Gauge block {j} is not unitary")
        if H.symmetry.is_real and np.iscomplexobj(U) and np.any(U.imag != 0):
            raise InvalidArgumentError(f"Gauge block {j} must be real in the orthogonal case")
    U = scipy.linalg.block_diag(*[np.asarray(u) for u in gauge])
    if H.symmetry.is_real:
        U = U.real
    return H.with_matrix(hermitian_part(U @ H.matrix @ U.conj().T))
