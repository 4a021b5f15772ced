"""
Realization plumbing shared by the experiment drivers.

Realization i of an experiment always uses stream rng.substream(i), and
attempt r of that realization uses rng.substream(i).substream(r).
"""

from typing import List, Optional, Tuple, Union

import numpy as np

from ..ensembles import BandModelSpec, RngStream, sample_band_matrix
from ..exceptions import InvalidArgumentError
from ..operators import DeformedBlockSpec, OrbitalModelSpec, build_deformed_block, build_orbital_hamiltonian
from ..spectra import eig_hermitian
from ..types import BlockHamiltonian
from ..utils import ordered_map

ModelSpec = Union[DeformedBlockSpec, OrbitalModelSpec, BandModelSpec]


def check_sample_count(n_samples: int, minimum: int = 2) -> int:
    if isinstance(n_samples, bool) or int(n_samples) != n_samples or n_samples < minimum:
        raise InvalidArgumentError(f"n_samples must be an integer >= {minimum}, got {n_samples!r}")
    return int(n_samples)


def total_dimension(spec: ModelSpec) -> int:
    """Σ_j N_j for the model."""
    return spec.dim


def sample_model(spec: ModelSpec, rng: Union[RngStream, np.random.Generator]) -> BlockHamiltonian:
    """Draw one Hamiltonian from any of the supported models."""
    if isinstance(spec, DeformedBlockSpec):
        return build_deformed_block(spec, rng)
    if isinstance(spec, OrbitalModelSpec):
        return build_orbital_hamiltonian(spec, rng)
    if isinstance(spec, BandModelSpec):
        return sample_band_matrix(spec, rng)
    raise InvalidArgumentError(f"Unsupported model spec {type(spec).__name__}")


def realization_streams(rng: RngStream, n_samples: int) -> List[RngStream]:
    if not isinstance(rng, RngStream):
        raise InvalidArgumentError(f"Experiments need an RngStream, got {type(rng).__name__}")
    return [rng.substream(i) for i in range(n_samples)]


def _spectrum_task(task: Tuple[ModelSpec, RngStream]) -> np.ndarray:
    spec, stream = task
    return eig_hermitian(sample_model(spec, stream.substream(0)).matrix).eigenvalues


def sample_spectra(
    spec: ModelSpec,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> List[np.ndarray]:
    """Sorted eigenvalues of n_samples independent realizations, in realization order."""
    tasks = [(spec, stream) for stream in realization_streams(rng, n_samples)]
    return ordered_map(_spectrum_task, tasks, workers)
