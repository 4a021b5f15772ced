"""
Exact self-avoiding-walk expansion of resolvent blocks on a finite domain.

For nearest-neighbor block operators,

    G[H_Λ](x, y) = Σ_k Σ_{π ∈ Π_k(x, y)} (-1)^k
        G[H_Λ](π_0, π_0) W(π_0, π_1) G[H_{Λ∖{π_0}}](π_1, π_1) W(π_1, π_2) ...
        G[H_{Λ∖{π_0, ..., π_{k-1}}}](π_k, π_k)

and the sum is finite on a finite domain.
"""

from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..constants import WALK_CONDITION_LIMIT
from ..exceptions import InvalidArgumentError, SingularityError
from ..operators import restrict
from ..spectra import resolvent_block
from ..types import BlockHamiltonian, LatticeBox, Site
from ..utils.logging import get_logger
from .saw import as_site, neighbor_table

logger = get_logger(__name__)


def require_nearest_neighbor(H: BlockHamiltonian) -> Dict[Site, List[Site]]:
    """
    Check that H couples only nearest-neighbor sites.

    Returns:
        The neighbor table of H's sites

    Raises:
        InvalidArgumentError: If H has no site labels or a nonzero block
            between non-neighboring sites
    """
    if H.sites is None:
        raise InvalidArgumentError("The walk expansion needs a Hamiltonian with site labels")
    for i, a in enumerate(H.sites):
        for j in range(i + 1, H.num_blocks):
            b = H.sites[j]
            if LatticeBox.distance(a, b) != 1 and np.any(H.matrix[H.block_slice(i), H.block_slice(j)] != 0):
                raise InvalidArgumentError(
                    f"Sites {a} and {b} are coupled but not nearest neighbors; "
                    "the walk expansion applies to nearest-neighbor operators only"
                )
    return neighbor_table(list(H.sites))


class _DepletedResolvents:
    """Memo of diagonal blocks G[H_{Λ∖S}](z, z), local to one expansion."""

    def __init__(self, H: BlockHamiltonian, energy: float):
        self.H = H
        self.energy = energy
        self._memo: Dict[Tuple[FrozenSet[Site], Site], np.ndarray] = {}
        self._checked: Dict[FrozenSet[Site], bool] = {}

    def diagonal(self, removed: FrozenSet[Site], site: Site, prefix: Sequence[Site]) -> np.ndarray:
        key = (removed, site)
        if key not in self._memo:
            remaining = [s for s in self.H.sites if s not in removed]
            sub = restrict(self.H, remaining) if removed else self.H
            if removed not in self._checked:
                shifted = sub.matrix - self.energy * np.eye(sub.dim)
                condition = float(np.linalg.cond(shifted))
                if not condition < WALK_CONDITION_LIMIT:
                    raise SingularityError(
                        f"Depleted restriction is numerically singular (condition {condition:.3e})",
                        energy=self.energy,
                        walk_prefix=list(prefix),
                    )
                self._checked[removed] = True
            self._memo[key] = resolvent_block(sub, self.energy, site, site)
        return self._memo[key]


def walk_expansion_resolvent(
    H: BlockHamiltonian,
    energy: float,
    x: Union[int, Sequence[int]],
    y: Union[int, Sequence[int]],
    k_max: Optional[int] = None,
) -> np.ndarray:
    """
    Partial walk sum for G_λ[H_Λ](x, y) over walks of at most k_max steps.

    Args:
        H: Nearest-neighbor block Hamiltonian with site labels
        energy: Spectral parameter λ
        x: Row site
        y: Column site
        k_max: Maximum walk length (default |Λ| - 1, the exact value)

    Returns:
        N_x x N_y matrix

    Raises:
        InvalidArgumentError: If H is not nearest-neighbor or lacks sites
        SingularityError: If a depleted restriction is singular at λ; the
            error names the walk prefix that reached it
    """
    neighbors = require_nearest_neighbor(H)
    start, end = as_site(x), as_site(y)
    H.block_index(start)
    H.block_index(end)
    if k_max is None:
        k_max = H.num_blocks - 1

    memo = _DepletedResolvents(H, energy)
    head = memo.diagonal(frozenset(), start, [])
    if start == end:
        return head.copy()

    total = np.zeros((head.shape[0], H.block(end, end).shape[0]), dtype=np.result_type(H.matrix.dtype, head.dtype))
    path = [start]
    visited = {start}
    terms = 0

    def extend(product: np.ndarray) -> None:
        nonlocal total, terms
        if len(path) - 1 >= k_max:
            return
        current = path[-1]
        removed = frozenset(visited)
        for nxt in neighbors[current]:
            if nxt in visited:
                continue
            hop = H.block(current, nxt)
            if not np.any(hop):
                continue
            step = -(product @ hop) @ memo.diagonal(removed, nxt, path + [nxt])
            if nxt == end:
                total = total + step
                terms += 1
                continue
            path.append(nxt)
            visited.add(nxt)
            extend(step)
            visited.discard(nxt)
            path.pop()

    extend(head)
    logger.debug(f"Walk expansion {start} -> {end}: {terms} nonzero walks up to length {k_max}")
    return total


def one_step_identity(
    H: BlockHamiltonian,
    energy: float,
    x: Union[int, Sequence[int]],
    y: Union[int, Sequence[int]],
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Both sides of G(x, y) = -Σ_{π_1 ∼ x} G[H_Λ](x, x) W(x, π_1) G[H_{Λ∖{x}}](π_1, y).

    Returns:
        (lhs, rhs) for x != y

    Raises:
        InvalidArgumentError: If x == y or H is not nearest-neighbor
    """
    neighbors = require_nearest_neighbor(H)
    start, end = as_site(x), as_site(y)
    if start == end:
        raise InvalidArgumentError("The one-step identity needs x != y")
    lhs = resolvent_block(H, energy, start, end)
    depleted = restrict(H, [s for s in H.sites if s != start])
    diagonal = resolvent_block(H, energy, start, start)
    rhs = np.zeros_like(lhs)
    for site in neighbors[start]:
        rhs = rhs - diagonal @ H.block(start, site) @ resolvent_block(depleted, energy, site, end)
    return lhs, rhs
