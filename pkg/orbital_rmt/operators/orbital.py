"""
Lattice orbital Hamiltonians (block Anderson, Wegner orbital, general).

(Hψ)(x) = V(x)ψ(x) + Σ_{y∼x} W(x, y)ψ(y) on the box, with GOE/GUE
potentials and one independent hopping block per unordered edge.
"""

import numpy as np

from ..ensembles import RngLike, resolve_generator, sample_gaussian_ensemble, sample_hopping_block
from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, offsets_from_sizes
from ..utils.logging import get_logger
from .specs import ModelKind, OrbitalModelSpec

logger = get_logger(__name__)


def sample_edge_hopping(spec: OrbitalModelSpec, gen: np.random.Generator) -> np.ndarray:
    """One hopping block W(x, y) for an edge, coupling included."""
    N, g = spec.N, spec.g
    if spec.kind is ModelKind.BLOCK_ANDERSON:
        return -g * np.eye(N)
    if spec.kind is ModelKind.WEGNER_ORBITAL:
        return g * sample_hopping_block(N, 1.0 / N, spec.symmetry, gen)
    block = np.asarray(spec.hopping(gen, N, spec.symmetry))
    if block.shape != (N, N):
        raise InvalidArgumentError(f"Hopping sampler returned shape {block.shape}, expected {(N, N)}")
    if spec.symmetry.is_real and np.iscomplexobj(block):
        if np.any(block.imag != 0):
            raise InvalidArgumentError("Hopping sampler must return real blocks in the orthogonal case")
        block = block.real
    return g * block


def build_orbital_hamiltonian(spec: OrbitalModelSpec, rng: RngLike) -> BlockHamiltonian:
    """
    Sample the finite-volume orbital Hamiltonian H_Λ on spec.box.

    All site potentials are drawn first in site order, then the hopping
    blocks in edge order. The block Anderson diagonal carries the
    full-lattice degree term 2dg, as P_Λ H P_Λ* keeps the diagonal of the
    infinite-volume operator.

    Args:
        spec: Model description
        rng: Stream or generator

    Returns:
        BlockHamiltonian with one N x N block per site
    """
    gen = resolve_generator(rng)
    box, N = spec.box, spec.N
    dtype = spec.symmetry.dtype
    matrix = np.zeros((spec.dim, spec.dim), dtype=dtype)

    diagonal_shift = 2.0 * box.d * spec.g if spec.kind is ModelKind.BLOCK_ANDERSON else 0.0
    for i in range(box.size):
        block = slice(i * N, (i + 1) * N)
        potential = sample_gaussian_ensemble(N, spec.symmetry, gen)
        if diagonal_shift:
            potential = potential + diagonal_shift * np.eye(N)
        matrix[block, block] = potential

    for i, j in box.edges():
        hop = sample_edge_hopping(spec, gen)
        rows, cols = slice(i * N, (i + 1) * N), slice(j * N, (j + 1) * N)
        matrix[rows, cols] = hop
        matrix[cols, rows] = hop.conj().T

    logger.debug(f"Built {spec.kind} Hamiltonian: {box.size} sites, N={N}, g={spec.g}")
    return BlockHamiltonian(
        matrix=matrix,
        offsets=offsets_from_sizes(spec.block_sizes),
        symmetry=spec.symmetry,
        sites=tuple(box.iter_sites()),
        box=box,
    )
