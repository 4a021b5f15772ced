"""
Gaussian band matrices H_L = (X_L + X_L*)/√2 with E|X_L(x, y)|² = ψ(x - y).
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, LatticeBox, SymmetryClass
from .rng import RngLike, resolve_generator
from .shapes import ShapeFunction


@dataclass(frozen=True)
class BandModelSpec:
    """Band matrix on the box Λ_L^d with variance profile ψ."""

    box: LatticeBox
    shape: ShapeFunction
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL

    def __post_init__(self):
        object.__setattr__(self, "symmetry", SymmetryClass.from_str(self.symmetry))
        if self.box.d != self.shape.d:
            raise InvalidArgumentError(
                f"Shape dimension {self.shape.d} does not match box dimension {self.box.d}"
            )

    @property
    def dim(self) -> int:
        return self.box.size

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BandModelSpec":
        box = LatticeBox.from_dict(data)
        shape_data = dict(data["shape"])
        shape_data.setdefault("d", box.d)
        return cls(box, ShapeFunction.from_dict(shape_data), SymmetryClass.from_str(data.get("symmetry", "orthogonal")))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": "band",
            **self.box.to_dict(),
            "shape": self.shape.to_dict(),
            "symmetry": self.symmetry.value,
        }


def sample_variance_profile(variances: np.ndarray, symmetry: SymmetryClass, rng: RngLike) -> np.ndarray:
    """
    Hermitian (X + X*)/√2 for X with independent entries E|X_ij|² = variances[i, j].
    """
    gen = resolve_generator(rng)
    std = np.sqrt(np.asarray(variances, dtype=np.float64))
    if SymmetryClass.from_str(symmetry).is_real:
        X = gen.standard_normal(std.shape) * std
    else:
        parts = gen.standard_normal((2,) + std.shape) * (std / np.sqrt(2.0))
        X = parts[0] + 1j * parts[1]
    return (X + X.conj().T) / np.sqrt(2.0)


def sample_band_matrix(spec: BandModelSpec, rng: RngLike) -> BlockHamiltonian:
    """
    Sample a Gaussian band matrix.

    Every site is a 1 x 1 block labelled by its coordinates, so the
    result plugs into the same resolvent and counting code as the
    orbital models.

    Args:
        spec: Box, shape function and symmetry class
        rng: Stream or generator

    Returns:
        BlockHamiltonian indexed by Λ_L^d in lexicographic order
    """
    variances = spec.shape.variance_matrix(spec.box)
    matrix = sample_variance_profile(variances, spec.symmetry, rng)
    return BlockHamiltonian(
        matrix=matrix,
        offsets=tuple(range(spec.dim + 1)),
        symmetry=spec.symmetry,
        sites=tuple(spec.box.iter_sites()),
        box=spec.box,
    )
