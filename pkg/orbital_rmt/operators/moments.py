"""
Exact second moments E tr H² from the covariance structure.
"""

from typing import Union

import numpy as np

from ..ensembles import BandModelSpec
from ..exceptions import InvalidArgumentError
from .specs import DeformedBlockSpec, ModelKind, OrbitalModelSpec


def gaussian_ensemble_trace_square(N: int, is_real: bool) -> float:
    """E tr V² for an N x N GOE (N + 1) or GUE (N) matrix."""
    return float(N + 1) if is_real else float(N)


def second_moment_exact(spec: Union[DeformedBlockSpec, OrbitalModelSpec, BandModelSpec]) -> float:
    """
    E tr H² for a model whose covariance is known in closed form.

    Args:
        spec: Deformed block, built-in orbital, or band model

    Returns:
        The expected trace of H²

    Raises:
        InvalidArgumentError: For the general orbital model, whose hopping
            law is only known through its sampler
    """
    if isinstance(spec, DeformedBlockSpec):
        deformation = float(np.sum(np.abs(spec.deformation) ** 2))
        return deformation + sum(gaussian_ensemble_trace_square(n, spec.symmetry.is_real) for n in spec.block_sizes)

    if isinstance(spec, OrbitalModelSpec):
        if spec.kind is ModelKind.GENERAL:
            raise InvalidArgumentError("Second moment of the general model is not available in closed form")
        N, g = spec.N, spec.g
        per_site = gaussian_ensemble_trace_square(N, spec.symmetry.is_real)
        if spec.kind is ModelKind.BLOCK_ANDERSON:
            per_site += (2.0 * spec.box.d * g) ** 2 * N
        # Both the Wegner block g W (N² entries of variance g²/N) and the
        # Anderson block -g I have squared Frobenius norm g² N on average.
        ordered_pairs = 2 * len(spec.box.edges())
        return spec.box.size * per_site + ordered_pairs * g * g * N

    if isinstance(spec, BandModelSpec):
        S = spec.shape.variance_matrix(spec.box)
        diagonal = float(np.trace(S))
        off_diagonal = float(np.sum(S)) - diagonal
        return off_diagonal + (2.0 if spec.symmetry.is_real else 1.0) * diagonal

    raise InvalidArgumentError(f"No closed-form second moment for {type(spec).__name__}")
