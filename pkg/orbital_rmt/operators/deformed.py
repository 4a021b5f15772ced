"""
Deformed block-Gaussian matrices H = H0 + ⊕_j V(j).
"""

import numpy as np

from ..ensembles import RngLike, resolve_generator, sample_gaussian_ensemble
from ..types import BlockHamiltonian, offsets_from_sizes
from .specs import DeformedBlockSpec


def sample_block_potential(spec: DeformedBlockSpec, rng: RngLike) -> np.ndarray:
    """Block-diagonal ⊕_j V(j) with independent GOE/GUE blocks."""
    gen = resolve_generator(rng)
    offsets = offsets_from_sizes(spec.block_sizes)
    V = np.zeros((spec.dim, spec.dim), dtype=spec.symmetry.dtype)
    for j, size in enumerate(spec.block_sizes):
        block = slice(offsets[j], offsets[j + 1])
        V[block, block] = sample_gaussian_ensemble(size, spec.symmetry, gen)
    return V


def build_deformed_block(spec: DeformedBlockSpec, rng: RngLike) -> BlockHamiltonian:
    """
    Sample H0 plus independent GOE/GUE blocks of the declared sizes.

    Args:
        spec: Block sizes, deformation and symmetry class
        rng: Stream or generator

    Returns:
        BlockHamiltonian partitioned by spec.block_sizes
    """
    V = sample_block_potential(spec, rng)
    return BlockHamiltonian(
        matrix=spec.deformation + V,
        offsets=offsets_from_sizes(spec.block_sizes),
        symmetry=spec.symmetry,
    )
