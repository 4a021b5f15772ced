"""
Hamiltonian assembly: lattice orbital models, deformed block-Gaussian
matrices, restrictions, gauge transformations, rank-one perturbations
and band partitions.
"""

from ..ensembles import BandModelSpec
from ..types import BlockHamiltonian, LatticeBox
from .deformed import build_deformed_block, sample_block_potential
from .gauge import BlockGauge, gauge_transform, sample_block_gauge
from .moments import gaussian_ensemble_trace_square, second_moment_exact
from .orbital import build_orbital_hamiltonian, sample_edge_hopping
from .partition import BoxPartition, DeformedBandSample, block_partition_band, sample_band_as_deformed_block
from .perturb import compress_to_complement, embed_block_vector, limit_coupling, rank_one_perturb
from .restrict import restrict
from .specs import DeformedBlockSpec, HoppingSampler, ModelKind, OrbitalModelSpec, random_deformation

__all__ = [
    "BandModelSpec",
    "BlockHamiltonian",
    "LatticeBox",
    "build_deformed_block",
    "sample_block_potential",
    "BlockGauge",
    "gauge_transform",
    "sample_block_gauge",
    "gaussian_ensemble_trace_square",
    "second_moment_exact",
    "build_orbital_hamiltonian",
    "sample_edge_hopping",
    "BoxPartition",
    "DeformedBandSample",
    "block_partition_band",
    "sample_band_as_deformed_block",
    "compress_to_complement",
    "embed_block_vector",
    "limit_coupling",
    "rank_one_perturb",
    "restrict",
    "DeformedBlockSpec",
    "HoppingSampler",
    "ModelKind",
    "OrbitalModelSpec",
    "random_deformation",
]
