"""
Exact dense spectral computations.
"""

from ..types import Interval
from .resolvent import (
    check_fractional_exponent,
    check_unit_vector,
    fractional_moment_sample,
    resolvent_apply,
    resolvent_block,
    resolvent_columns,
    resolvent_matrix,
    spectral_distance,
)
from .spectrum import (
    Spectrum,
    as_interval,
    check_interlacing,
    count_in_interval,
    count_many,
    eig_hermitian,
    interlacing_violation,
    nudge_interval,
    operator_norm,
    smoothed_count,
)

__all__ = [
    "Interval",
    "check_fractional_exponent",
    "check_unit_vector",
    "fractional_moment_sample",
    "resolvent_apply",
    "resolvent_block",
    "resolvent_columns",
    "resolvent_matrix",
    "spectral_distance",
    "Spectrum",
    "as_interval",
    "check_interlacing",
    "count_in_interval",
    "count_many",
    "eig_hermitian",
    "interlacing_violation",
    "nudge_interval",
    "operator_norm",
    "smoothed_count",
]
