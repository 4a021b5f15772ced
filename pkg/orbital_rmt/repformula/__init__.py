"""
Schur-complement representation of eigenvalue counts.
"""

from .poisson import density_xi_average, poisson_identity_check, stieltjes_xi_average
from .quadrature import QuadratureSpec, ave_quadrature
from .representation import (
    RepresentationResult,
    perron_stieltjes_count,
    representation_count,
    representation_value,
)
from .schur import SchurData, a_matrix, schur_pieces, xy_matrices

__all__ = [
    "density_xi_average",
    "poisson_identity_check",
    "stieltjes_xi_average",
    "QuadratureSpec",
    "ave_quadrature",
    "RepresentationResult",
    "perron_stieltjes_count",
    "representation_count",
    "representation_value",
    "SchurData",
    "a_matrix",
    "schur_pieces",
    "xy_matrices",
]
