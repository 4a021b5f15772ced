"""
Partition of a band-matrix domain into boxes, and the matching
decomposition of a band matrix into a deformed block-Gaussian matrix.
"""

import itertools
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..ensembles import BandModelSpec, RngLike, resolve_generator, sample_gaussian_ensemble, sample_variance_profile
from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, LatticeBox, Site, offsets_from_sizes


@dataclass(frozen=True)
class BoxPartition:
    """
    Λ_L^d split into Cartesian products of 1D intervals.

    Attributes:
        box: The partitioned box
        intervals: Inclusive (first, last) coordinate ranges of the 1D
            intervals, left to right
    """

    box: LatticeBox
    intervals: Tuple[Tuple[int, int], ...]

    @property
    def interval_lengths(self) -> List[int]:
        return [b - a + 1 for a, b in self.intervals]

    @property
    def num_boxes(self) -> int:
        return len(self.intervals) ** self.box.d

    def boxes(self) -> List[List[Site]]:
        """Sites of every box, boxes and sites both in lexicographic order."""
        ranges = [range(a, b + 1) for a, b in self.intervals]
        return [list(itertools.product(*choice)) for choice in itertools.product(ranges, repeat=self.box.d)]

    @property
    def block_sizes(self) -> List[int]:
        return [len(b) for b in self.boxes()]

    def permutation(self) -> np.ndarray:
        """Lattice indices of the sites in box order."""
        return np.array([self.box.index(site) for b in self.boxes() for site in b], dtype=np.int64)


def block_partition_band(L: int, W: int, d: int = 1) -> BoxPartition:
    """
    Partition Λ_L^d into boxes whose sides have between W+1 and 2W+1 points.

    Greedy from the left: intervals of W+1 points are cut while more than
    2W+1 points remain, and the last interval takes the rest.

    Raises:
        InvalidArgumentError: If W is outside [0, 2L]
    """
    box = LatticeBox(d, L)
    if isinstance(W, bool) or int(W) != W or not 0 <= W <= 2 * L:
        raise InvalidArgumentError(f"Partition needs an integer 0 <= W <= 2L = {2 * L}, got W={W}")
    W = int(W)
    intervals = []
    start, remaining = -L, 2 * L + 1
    while remaining > 2 * W + 1:
        intervals.append((start, start + W))
        start += W + 1
        remaining -= W + 1
    intervals.append((start, L))
    return BoxPartition(box, tuple(intervals))


@dataclass(frozen=True, eq=False)
class DeformedBandSample:
    """
    One band matrix drawn as H_L = H_L^0 + V_L.

    Attributes:
        hamiltonian: H_L in lattice order with one site per block
        block_view: H_L in box order, one block per partition box
        background: H_L^0 in box order
        block_variances: Per-entry variance of each GOE/GUE block of V_L
        partition: The box partition used
    """

    hamiltonian: BlockHamiltonian
    block_view: BlockHamiltonian
    background: np.ndarray
    block_variances: Tuple[float, ...]
    partition: BoxPartition


def sample_band_as_deformed_block(spec: BandModelSpec, partition: BoxPartition, rng: RngLike) -> DeformedBandSample:
    """
    Sample a band matrix through its block decomposition.

    On each box B_j, V_L has a GOE/GUE block whose off-diagonal variance
    v_j is the smallest ψ(x - y) over x, y in B_j; the remainder H_L^0 is an
    independent Gaussian band matrix with profile ψ - v_j inside boxes and
    ψ across them. The sum has the law of sample_band_matrix(spec).

    Raises:
        InvalidArgumentError: If the partition does not match the model or
            ψ vanishes somewhere inside a box
    """
    if partition.box != spec.box:
        raise InvalidArgumentError(f"Partition box {partition.box} does not match model box {spec.box}")
    gen = resolve_generator(rng)
    perm = partition.permutation()
    variances = spec.shape.variance_matrix(spec.box)[np.ix_(perm, perm)]
    sizes = partition.block_sizes
    offsets = offsets_from_sizes(sizes)

    floors = []
    remainder = variances.copy()
    for j in range(len(sizes)):
        block = slice(offsets[j], offsets[j + 1])
        floor = float(np.min(variances[block, block]))
        if floor <= 0:
            raise InvalidArgumentError(
                f"Shape function vanishes inside partition box {j}; "
                "the band matrix has no GOE/GUE block component there"
            )
        floors.append(floor)
        remainder[block, block] -= floor
    np.maximum(remainder, 0.0, out=remainder)

    background = sample_variance_profile(remainder, spec.symmetry, gen)
    blocks = np.zeros_like(background)
    for j, size in enumerate(sizes):
        block = slice(offsets[j], offsets[j + 1])
        # Off-diagonal variance of s * GOE_n is s² / n.
        blocks[block, block] = np.sqrt(floors[j] * size) * sample_gaussian_ensemble(size, spec.symmetry, gen)
    total = background + blocks

    inverse = np.empty_like(perm)
    inverse[perm] = np.arange(perm.size)
    lattice_matrix = total[np.ix_(inverse, inverse)]
    hamiltonian = BlockHamiltonian(
        matrix=lattice_matrix,
        offsets=tuple(range(spec.dim + 1)),
        symmetry=spec.symmetry,
        sites=tuple(spec.box.iter_sites()),
        box=spec.box,
    )
    block_view = BlockHamiltonian(matrix=total, offsets=offsets, symmetry=spec.symmetry)
    background.setflags(write=False)
    return DeformedBandSample(hamiltonian, block_view, background, tuple(floors), partition)
