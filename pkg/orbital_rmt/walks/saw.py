"""
Self-avoiding walks between two sites of a finite lattice domain.
"""

import numbers
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Set, Tuple, Union

from ..exceptions import InvalidArgumentError
from ..types import LatticeBox, Site

Domain = Union[LatticeBox, Iterable[Sequence[int]]]


@dataclass(frozen=True)
class SAWalk:
    """Pairwise distinct sites π_0 ∼ π_1 ∼ ... ∼ π_k."""

    vertices: Tuple[Site, ...]

    def __post_init__(self):
        vertices = tuple(tuple(int(c) for c in v) for v in self.vertices)
        if not vertices:
            raise InvalidArgumentError("A walk needs at least one vertex")
        if len(set(vertices)) != len(vertices):
            raise InvalidArgumentError(f"Walk {vertices} revisits a site")
        for a, b in zip(vertices, vertices[1:]):
            if LatticeBox.distance(a, b) != 1:
                raise InvalidArgumentError(f"Walk step {a} -> {b} is not a nearest-neighbor step")
        object.__setattr__(self, "vertices", vertices)

    @property
    def length(self) -> int:
        """Number of steps k."""
        return len(self.vertices) - 1

    @property
    def start(self) -> Site:
        return self.vertices[0]

    @property
    def end(self) -> Site:
        return self.vertices[-1]


def as_site(site: Union[int, Sequence[int]]) -> Site:
    """Site tuple from a coordinate sequence, or from an int when d = 1."""
    if isinstance(site, numbers.Integral):
        return (site,)
    return tuple(int(c) for c in site)


def domain_sites(domain: Domain) -> List[Site]:
    if isinstance(domain, LatticeBox):
        return domain.sites()
    return [tuple(int(c) for c in s) for s in domain]


def neighbor_table(sites: Sequence[Site]) -> Dict[Site, List[Site]]:
    """Nearest neighbors of each site inside the domain, in lexicographic order."""
    members: Set[Site] = set(sites)
    table = {}
    for site in sites:
        found = []
        for axis in range(len(site)):
            for step in (-1, 1):
                candidate = list(site)
                candidate[axis] += step
                if tuple(candidate) in members:
                    found.append(tuple(candidate))
        table[site] = sorted(found)
    return table


def enumerate_sa_walks(domain: Domain, x: Sequence[int], y: Sequence[int], k_max: int) -> List[SAWalk]:
    """
    All self-avoiding walks from x to y with at most k_max steps.

    Args:
        domain: A box or any finite set of sites
        x: Start site
        y: End site
        k_max: Maximum number of steps

    Returns:
        Walks in depth-first lexicographic order; x == y gives the single
        trivial walk

    Raises:
        InvalidArgumentError: If x or y is not in the domain
    """
    sites = domain_sites(domain)
    start, end = as_site(x), as_site(y)
    neighbors = neighbor_table(sites)
    for site in (start, end):
        if site not in neighbors:
            raise InvalidArgumentError(f"Site {site} is not in the domain")
    if start == end:
        return [SAWalk((start,))]

    walks: List[SAWalk] = []
    path = [start]
    visited = {start}

    def extend() -> None:
        if len(path) - 1 >= k_max:
            return
        for nxt in neighbors[path[-1]]:
            if nxt in visited:
                continue
            if nxt == end:
                walks.append(SAWalk(tuple(path) + (nxt,)))
                continue
            path.append(nxt)
            visited.add(nxt)
            extend()
            visited.discard(nxt)
            path.pop()

    extend()
    return walks
