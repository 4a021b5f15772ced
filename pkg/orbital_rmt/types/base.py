"""
Core value types shared by every orbital-rmt subpackage.

Symmetry classes, open spectral intervals and the lattice box
Λ_L^d = {-L, ..., L}^d with its lexicographic site indexing.
"""

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np
from typing_extensions import Self

from ..exceptions import InvalidArgumentError

Site = Tuple[int, ...]


class SymmetryClass(Enum):
    """Orthogonal (real symmetric) or unitary (complex Hermitian) case."""

    ORTHOGONAL = "orthogonal"
    UNITARY = "unitary"

    def __str__(self) -> str:
        return self.value

    @property
    def is_real(self) -> bool:
        return self is SymmetryClass.ORTHOGONAL

    @property
    def dtype(self) -> type:
        """numpy dtype of matrices in this class."""
        return np.float64 if self.is_real else np.complex128

    @classmethod
    def from_str(cls, value: Union[str, "SymmetryClass"]) -> "SymmetryClass":
        """
        Parse a symmetry class name.

        Raises:
            InvalidArgumentError: If the name is unknown
        """
        if isinstance(value, cls):
            return value
        aliases = {"goe": cls.ORTHOGONAL, "real": cls.ORTHOGONAL, "gue": cls.UNITARY, "complex": cls.UNITARY}
        key = str(value).strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise InvalidArgumentError(
                f"Unknown symmetry class {value!r}; expected 'orthogonal' or 'unitary'"
            )


@dataclass(frozen=True)
class Interval:
    """
    Open interval (lower, upper) of the real line.

    Eigenvalues sitting exactly on an endpoint are not counted.
    """

    lower: float
    upper: float

    def __post_init__(self):
        lower, upper = float(self.lower), float(self.upper)
        if math.isnan(lower) or math.isnan(upper):
            raise InvalidArgumentError("Interval endpoints must not be NaN")
        if not lower < upper:
            raise InvalidArgumentError(
                f"Interval requires lower < upper, got ({lower}, {upper})"
            )
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def length(self) -> float:
        return self.upper - self.lower

    @property
    def center(self) -> float:
        return 0.5 * (self.lower + self.upper)

    def contains(self, value: float) -> bool:
        """Open-interval membership."""
        return self.lower < value < self.upper

    def shifted(self, delta: float) -> Self:
        return type(self)(self.lower + delta, self.upper + delta)

    @classmethod
    def centered(cls, center: float, length: float) -> "Interval":
        return cls(center - 0.5 * length, center + 0.5 * length)

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> "Interval":
        """Create an Interval from a two-element [lower, upper] list."""
        if len(values) != 2:
            raise InvalidArgumentError(f"Interval needs two endpoints, got {list(values)}")
        return cls(values[0], values[1])

    def to_list(self) -> List[float]:
        return [self.lower, self.upper]

    def __str__(self) -> str:
        return f"({self.lower:g}, {self.upper:g})"


@dataclass(frozen=True)
class LatticeBox:
    """
    The box Λ_L^d = {-L, ..., L}^d.

    Sites are integer tuples; index i of a site is its position in
    lexicographic order, so site (-L, ..., -L) has index 0.
    """

    d: int
    L: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise InvalidArgumentError(f"Lattice dimension d must be an integer >= 1, got {self.d!r}")
        if isinstance(self.L, bool) or not isinstance(self.L, (int, np.integer)) or self.L < 0:
            raise InvalidArgumentError(f"Box half-width L must be an integer >= 0, got {self.L!r}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "L", int(self.L))

    @property
    def side(self) -> int:
        return 2 * self.L + 1

    @property
    def size(self) -> int:
        """Number of sites, (2L+1)^d."""
        return self.side ** self.d

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.side,) * self.d

    def sites(self) -> List[Site]:
        """All sites in index order."""
        return list(self.iter_sites())

    def iter_sites(self) -> Iterator[Site]:
        return itertools.product(range(-self.L, self.L + 1), repeat=self.d)

    def contains(self, site: Sequence[int]) -> bool:
        return len(site) == self.d and all(-self.L <= c <= self.L for c in site)

    def normalize(self, site: Union[int, Sequence[int]]) -> Site:
        """
        Turn an int (d = 1) or a coordinate sequence into a site tuple.

        Raises:
            InvalidArgumentError: If the site is not in the box
        """
        if isinstance(site, (int, np.integer)):
            site = (int(site),)
        coords = tuple(int(c) for c in site)
        if not self.contains(coords):
            raise InvalidArgumentError(f"Site {coords} is outside the box with d={self.d}, L={self.L}")
        return coords

    def index(self, site: Union[int, Sequence[int]]) -> int:
        """Lexicographic index of a site."""
        coords = self.normalize(site)
        return int(np.ravel_multi_index(tuple(c + self.L for c in coords), self.shape))

    def site(self, index: int) -> Site:
        """Site with the given lexicographic index."""
        if not 0 <= index < self.size:
            raise InvalidArgumentError(f"Site index {index} out of range [0, {self.size})")
        return tuple(int(c) - self.L for c in np.unravel_index(index, self.shape))

    def coordinates(self) -> np.ndarray:
        """(size, d) integer array of all site coordinates in index order."""
        grids = np.indices(self.shape).reshape(self.d, -1).T
        return grids - self.L

    def neighbors(self, site: Union[int, Sequence[int]]) -> List[Site]:
        """Sites of the box at l1 distance 1, in lexicographic order."""
        coords = self.normalize(site)
        found = []
        for axis in range(self.d):
            for step in (-1, 1):
                candidate = list(coords)
                candidate[axis] += step
                if self.contains(candidate):
                    found.append(tuple(candidate))
        return sorted(found)

    def edges(self) -> List[Tuple[int, int]]:
        """
        Unordered nearest-neighbor edges as index pairs (i, j) with i < j.

        The lexicographically smaller endpoint always comes first.
        """
        result = []
        for i, site in enumerate(self.iter_sites()):
            for axis in range(self.d):
                if site[axis] < self.L:
                    neighbor = list(site)
                    neighbor[axis] += 1
                    result.append((i, self.index(neighbor)))
        return sorted(result)

    @staticmethod
    def distance(x: Sequence[int], y: Sequence[int]) -> int:
        """l1 graph distance."""
        return int(sum(abs(a - b) for a, b in zip(x, y)))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "LatticeBox":
        return cls(d=data["d"], L=data["L"])

    def to_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "L": self.L}
