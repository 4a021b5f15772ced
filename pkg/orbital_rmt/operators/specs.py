"""
Declarative descriptions of the random block ensembles.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ..ensembles import RngStream, sample_gaussian_ensemble
from ..exceptions import InvalidArgumentError
from ..types import LatticeBox, SymmetryClass, require_hermitian
from ..utils.logging import get_logger

logger = get_logger(__name__)

# (generator, N, symmetry) -> N x N hopping block for one edge.
HoppingSampler = Callable[[np.random.Generator, int, SymmetryClass], np.ndarray]


class ModelKind(Enum):
    """Lattice orbital model variants."""

    BLOCK_ANDERSON = "blockAnderson"
    WEGNER_ORBITAL = "wegnerOrbital"
    GENERAL = "general"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_str(cls, value: str) -> "ModelKind":
        aliases = {
            "blockanderson": cls.BLOCK_ANDERSON,
            "block_anderson": cls.BLOCK_ANDERSON,
            "anderson": cls.BLOCK_ANDERSON,
            "wegnerorbital": cls.WEGNER_ORBITAL,
            "wegner_orbital": cls.WEGNER_ORBITAL,
            "wegner": cls.WEGNER_ORBITAL,
            "general": cls.GENERAL,
        }
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        if key not in aliases:
            raise InvalidArgumentError(
                f"Unknown model kind {value!r}; expected one of {[k.value for k in cls]}"
            )
        return aliases[key]


def _positive_int(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class OrbitalModelSpec:
    """
    Lattice orbital model on a finite box.

    Attributes:
        box: The box Λ_L^d
        N: Orbitals per site
        g: Coupling constant, >= 0
        symmetry: Orthogonal or unitary case
        kind: Block Anderson, Wegner orbital, or general
        hopping: Edge sampler for the general kind; the edge block is
            g times its output
    """

    box: LatticeBox
    N: int
    g: float
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL
    kind: ModelKind = ModelKind.WEGNER_ORBITAL
    hopping: Optional[HoppingSampler] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "N", _positive_int("N", self.N))
        g = float(self.g)
        if not math.isfinite(g) or g < 0:
            raise InvalidArgumentError(f"Coupling g must be finite and >= 0, got {self.g}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "symmetry", SymmetryClass.from_str(self.symmetry))
        kind = ModelKind.from_str(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is ModelKind.GENERAL and self.hopping is None:
            raise InvalidArgumentError("The general model needs a hopping sampler")
        if kind is not ModelKind.GENERAL and self.hopping is not None:
            raise InvalidArgumentError(f"{kind} has a fixed hopping law; drop the hopping sampler")

    @property
    def num_sites(self) -> int:
        return self.box.size

    @property
    def dim(self) -> int:
        return self.box.size * self.N

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        return (self.N,) * self.box.size

    def with_coupling(self, g: float) -> "OrbitalModelSpec":
        return OrbitalModelSpec(self.box, self.N, g, self.symmetry, self.kind, self.hopping)

    def with_orbitals(self, N: int) -> "OrbitalModelSpec":
        return OrbitalModelSpec(self.box, N, self.g, self.symmetry, self.kind, self.hopping)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OrbitalModelSpec":
        kind = ModelKind.from_str(data.get("kind", "wegnerOrbital"))
        if kind is ModelKind.GENERAL:
            raise InvalidArgumentError("The general model takes a Python hopping sampler and cannot be read from a config")
        return cls(
            box=LatticeBox(data["d"], data["L"]),
            N=data["N"],
            g=data["g"],
            symmetry=SymmetryClass.from_str(data.get("symmetry", "orthogonal")),
            kind=kind,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": "orbital",
            **self.box.to_dict(),
            "N": self.N,
            "g": self.g,
            "symmetry": self.symmetry.value,
            "kind": self.kind.value,
        }


def random_deformation(dim: int, symmetry: SymmetryClass, scale: float, seed: int) -> np.ndarray:
    """A fixed Hermitian deformation: scale times a GOE/GUE draw from its own seed."""
    return float(scale) * sample_gaussian_ensemble(dim, symmetry, RngStream(seed))


def _random_parameters(source: Dict[str, Any]) -> Tuple[float, int]:
    scale = source.get("scale", 1.0)
    seed = source.get("seed", 0)
    if isinstance(scale, bool) or not isinstance(scale, (int, float)) or not math.isfinite(scale):
        raise InvalidArgumentError(f"H0.scale must be a finite number, got {scale!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise InvalidArgumentError(f"H0.seed must be a non-negative integer, got {seed!r}")
    return float(scale), seed


@dataclass(frozen=True, eq=False)
class DeformedBlockSpec:
    """
    H = H0 + ⊕_j V(j) with independent GOE/GUE blocks V(j) of size N_j.

    Attributes:
        block_sizes: N_1, ..., N_k
        H0: Fixed Hermitian deformation of dimension sum(N_j), or None for a
            seeded random deformation that is drawn on first use
        symmetry: Orthogonal or unitary case
        source: How H0 was specified, echoed into result files
    """

    block_sizes: Tuple[int, ...]
    H0: Optional[np.ndarray]
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL
    source: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        sizes = tuple(_positive_int("block size", n) for n in self.block_sizes)
        if not sizes:
            raise InvalidArgumentError("At least one block is required")
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "symmetry", SymmetryClass.from_str(self.symmetry))

        if self.H0 is None:
            source = self.source or {}
            if source.get("kind") != "random":
                raise InvalidArgumentError("H0 may only be omitted for a random deformation")
            _random_parameters(source)
        else:
            object.__setattr__(self, "H0", self._checked(self.H0))

    def _checked(self, H0: Any) -> np.ndarray:
        H0 = require_hermitian(np.asarray(H0), "H0")
        if H0.shape[0] != self.dim:
            raise InvalidArgumentError(
                f"H0 has dimension {H0.shape[0]} but the blocks add up to {self.dim}"
            )
        if self.symmetry.is_real:
            if np.iscomplexobj(H0) and np.any(H0.imag != 0):
                raise InvalidArgumentError("H0 must be real in the orthogonal case")
            H0 = np.array(H0.real if np.iscomplexobj(H0) else H0, dtype=np.float64)
        else:
            H0 = np.array(H0, dtype=np.complex128)
        H0.setflags(write=False)
        return H0

    @property
    def deformation(self) -> np.ndarray:
        """H0, drawn from its seed the first time a random one is needed."""
        if self.H0 is None:
            scale, seed = _random_parameters(self.source)
            logger.debug(f"Drawing random deformation of dimension {self.dim} from seed {seed}")
            object.__setattr__(self, "H0", self._checked(random_deformation(self.dim, self.symmetry, scale, seed)))
        return self.H0

    @property
    def dim(self) -> int:
        return sum(self.block_sizes)

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)

    @classmethod
    def zero(cls, block_sizes: Sequence[int], symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL) -> "DeformedBlockSpec":
        dim = sum(block_sizes)
        return cls(tuple(block_sizes), np.zeros((dim, dim)), symmetry, {"kind": "zero"})

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DeformedBlockSpec":
        """
        Build from a config block.

        H0 is one of {"kind": "zero"}, {"kind": "random", "scale": s,
        "seed": n} or {"kind": "matrix", "real": rows, "imag": rows}. A
        random H0 is not sampled here; see `deformation`.
        """
        sizes = tuple(data["block_sizes"])
        symmetry = SymmetryClass.from_str(data.get("symmetry", "orthogonal"))
        source = dict(data.get("H0", {"kind": "zero"}))
        dim = sum(int(n) for n in sizes)
        kind = source.get("kind", "zero")
        if kind == "zero":
            H0 = np.zeros((dim, dim))
        elif kind == "random":
            H0 = None
        elif kind == "matrix":
            H0 = np.array(source["real"], dtype=np.float64)
            if "imag" in source:
                H0 = H0 + 1j * np.array(source["imag"], dtype=np.float64)
        else:
            raise InvalidArgumentError(f"Unknown H0 kind {kind!r}; expected zero, random or matrix")
        return cls(sizes, H0, symmetry, source)

    def to_dict(self) -> Dict[str, Any]:
        source = self.source
        if source is None:
            source = {"kind": "matrix", "real": self.deformation.real.tolist()}
            if not self.symmetry.is_real:
                source["imag"] = self.deformation.imag.tolist()
        return {
            "type": "deformed",
            "block_sizes": list(self.block_sizes),
            "H0": source,
            "symmetry": self.symmetry.value,
        }
