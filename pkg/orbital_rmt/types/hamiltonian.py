"""
BlockHamiltonian: the dense Hermitian matrix every experiment consumes.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..constants import HERMITIAN_RTOL
from ..exceptions import InvalidArgumentError
from .base import LatticeBox, Site, SymmetryClass


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    """
    Return (M + M*)/2.

    The result is Hermitian to the last bit: entry (j, i) is computed from
    the same two floating point numbers as entry (i, j).
    """
    return 0.5 * (matrix + matrix.conj().T)


def hermitian_defect(matrix: np.ndarray) -> float:
    """max |M - M*| entry."""
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def require_hermitian(matrix: np.ndarray, name: str = "matrix", rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """
    Validate a square matrix as Hermitian within rtol * max|M| and return it
    made exactly Hermitian.

    Raises:
        InvalidArgumentError: If the matrix is not square or not Hermitian
    """
    arr = np.asarray(matrix)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidArgumentError(f"{name} must be a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"{name} has non-finite entries")
    scale = float(np.max(np.abs(arr))) if arr.size else 0.0
    defect = hermitian_defect(arr)
    if defect > rtol * max(scale, 1e-300):
        raise InvalidArgumentError(
            f"{name} is not Hermitian: max |M - M*| = {defect:.3e} exceeds {rtol:g} * max|M| = {rtol * scale:.3e}"
        )
    if defect == 0.0:
        return arr
    return hermitian_part(arr)


def offsets_from_sizes(sizes: Sequence[int]) -> Tuple[int, ...]:
    """Block offsets (0, N_1, N_1 + N_2, ..., dim) from block sizes."""
    return tuple(int(v) for v in np.concatenate([[0], np.cumsum(sizes, dtype=np.int64)]))


@dataclass(frozen=True, eq=False)
class BlockHamiltonian:
    """
    Dense Hermitian matrix with an explicit block partition.

    Block j occupies rows and columns offsets[j]:offsets[j+1]. Lattice
    models also carry the site of every block and the box they live in.
    The matrix is stored read-only.
    """

    matrix: np.ndarray
    offsets: Tuple[int, ...]
    symmetry: SymmetryClass
    sites: Optional[Tuple[Site, ...]] = None
    box: Optional[LatticeBox] = None
    _site_lookup: Dict[Site, int] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        symmetry = SymmetryClass.from_str(self.symmetry)
        object.__setattr__(self, "symmetry", symmetry)

        matrix = np.asarray(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidArgumentError(f"Hamiltonian must be square, got shape {matrix.shape}")
        if symmetry.is_real:
            if np.iscomplexobj(matrix):
                if np.any(matrix.imag != 0):
                    raise InvalidArgumentError("Orthogonal-class Hamiltonian must be real")
                matrix = matrix.real
            matrix = np.array(matrix, dtype=np.float64)
        else:
            matrix = np.array(matrix, dtype=np.complex128)
        if hermitian_defect(matrix) != 0.0:
            raise InvalidArgumentError("Hamiltonian matrix must be exactly Hermitian")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

        offsets = tuple(int(v) for v in self.offsets)
        if len(offsets) < 2 or offsets[0] != 0 or offsets[-1] != matrix.shape[0]:
            raise InvalidArgumentError(
                f"Block offsets must start at 0 and end at dimension {matrix.shape[0]}, got {offsets}"
            )
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise InvalidArgumentError(f"Block offsets must be strictly increasing, got {offsets}")
        object.__setattr__(self, "offsets", offsets)

        if self.sites is not None:
            sites = tuple(tuple(int(c) for c in s) for s in self.sites)
            if len(sites) != len(offsets) - 1:
                raise InvalidArgumentError(
                    f"Got {len(sites)} sites for {len(offsets) - 1} blocks"
                )
            if len(set(sites)) != len(sites):
                raise InvalidArgumentError("Block sites must be distinct")
            object.__setattr__(self, "sites", sites)
            self._site_lookup.update({s: j for j, s in enumerate(sites)})

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_blocks(self) -> int:
        return len(self.offsets) - 1

    @property
    def block_sizes(self) -> List[int]:
        return [b - a for a, b in zip(self.offsets, self.offsets[1:])]

    def block_slice(self, j: int) -> slice:
        if not 0 <= j < self.num_blocks:
            raise InvalidArgumentError(f"Block index {j} out of range [0, {self.num_blocks})")
        return slice(self.offsets[j], self.offsets[j + 1])

    def block_index(self, key: Union[int, Sequence[int]]) -> int:
        """
        Resolve a block key: ints are block indices, tuples name sites.
        """
        if isinstance(key, (int, np.integer)):
            j = int(key)
            self.block_slice(j)
            return j
        if self.sites is None:
            raise InvalidArgumentError("Hamiltonian has no site labels; use block indices")
        site = tuple(int(c) for c in key)
        if site not in self._site_lookup:
            raise InvalidArgumentError(f"Site {site} is not a block of this Hamiltonian")
        return self._site_lookup[site]

    def block(self, x: Union[int, Sequence[int]], y: Union[int, Sequence[int]]) -> np.ndarray:
        """The (x, y) block of the matrix."""
        return self.matrix[self.block_slice(self.block_index(x)), self.block_slice(self.block_index(y))]

    def with_matrix(self, matrix: np.ndarray) -> "BlockHamiltonian":
        """Same partition and labels around a different matrix."""
        return BlockHamiltonian(matrix, self.offsets, self.symmetry, self.sites, self.box)

    def __repr__(self) -> str:
        return (
            f"BlockHamiltonian(dim={self.dim}, blocks={self.num_blocks}, "
            f"symmetry={self.symmetry.value})"
        )
