"""
Samplers for Gaussian building blocks and band-matrix shape functions.
"""

from ..types import SymmetryClass
from .band import BandModelSpec, sample_band_matrix, sample_variance_profile
from .gaussian import (
    sample_complex_gaussian_matrix,
    sample_gaussian_ensemble,
    sample_goe,
    sample_gue,
    sample_haar,
    sample_hopping_block,
    sample_real_gaussian_matrix,
    sample_sphere,
)
from .rng import RngLike, RngStream, resolve_generator
from .shapes import (
    NAMED_PROFILES,
    ShapeFunction,
    ShapeKind,
    eval_shape,
    susy_kernel_closed_form_1d,
    susy_kernel_heat_integral,
    susy_kernel_table,
    susy_kernel_value,
)

__all__ = [
    "SymmetryClass",
    "BandModelSpec",
    "sample_band_matrix",
    "sample_variance_profile",
    "sample_complex_gaussian_matrix",
    "sample_gaussian_ensemble",
    "sample_goe",
    "sample_gue",
    "sample_haar",
    "sample_hopping_block",
    "sample_real_gaussian_matrix",
    "sample_sphere",
    "RngLike",
    "RngStream",
    "resolve_generator",
    "NAMED_PROFILES",
    "ShapeFunction",
    "ShapeKind",
    "eval_shape",
    "susy_kernel_closed_form_1d",
    "susy_kernel_heat_integral",
    "susy_kernel_table",
    "susy_kernel_value",
]
