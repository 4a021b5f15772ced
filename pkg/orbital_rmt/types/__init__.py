"""
Core types: symmetry classes, intervals, lattice boxes, block Hamiltonians.
"""

from .base import Interval, LatticeBox, Site, SymmetryClass
from .hamiltonian import (
    BlockHamiltonian,
    hermitian_defect,
    hermitian_part,
    offsets_from_sizes,
    require_hermitian,
)

__all__ = [
    "Interval",
    "LatticeBox",
    "Site",
    "SymmetryClass",
    "BlockHamiltonian",
    "hermitian_defect",
    "hermitian_part",
    "offsets_from_sizes",
    "require_hermitian",
]
