"""
Finite-volume restriction H_Λ = P_Λ H P_Λ*.
"""

from typing import Iterable, List, Sequence, Union

import numpy as np

from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, offsets_from_sizes

BlockKey = Union[int, Sequence[int]]


def restrict(H: BlockHamiltonian, subdomain: Iterable[BlockKey]) -> BlockHamiltonian:
    """
    Principal submatrix over the selected blocks.

    Blocks keep the order they have in H, whatever order the subdomain
    lists them in, and diagonal blocks are copied unchanged.

    Args:
        H: Hamiltonian to restrict
        subdomain: Block indices or, for lattice models, sites

    Returns:
        Restricted BlockHamiltonian with the surviving site labels

    Raises:
        InvalidArgumentError: If a site is not in H or the subdomain is empty
    """
    selected: List[int] = sorted({H.block_index(key) for key in subdomain})
    if not selected:
        raise InvalidArgumentError("Cannot restrict to an empty subdomain")
    rows = np.concatenate([np.arange(H.offsets[j], H.offsets[j + 1]) for j in selected])
    sizes = [H.offsets[j + 1] - H.offsets[j] for j in selected]
    sites = tuple(H.sites[j] for j in selected) if H.sites is not None else None
    return BlockHamiltonian(
        matrix=H.matrix[np.ix_(rows, rows)],
        offsets=offsets_from_sizes(sizes),
        symmetry=H.symmetry,
        sites=sites,
        box=H.box,
    )
