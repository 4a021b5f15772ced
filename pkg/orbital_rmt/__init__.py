"""
orbital-rmt - Monte Carlo checks of eigenvalue statistics and localisation
for random block operators.

Builds deformed block-Gaussian matrices, Wegner orbital models and Gaussian
band matrices, and estimates Wegner, Minami and fractional-moment
quantities on them. The `orbital-rmt` command runs JSON-configured
experiments and writes JSONL and CSV results.
"""

__version__ = "0.1.0"
__author__ = "orbital-rmt developers"

from .exceptions import (
    OrbitalRMTError, InvalidArgumentError, SingularityError, AccuracyError,
    ConfigValidationError, ResultWriteError,
)
from .types import (
    Interval, LatticeBox, Site, SymmetryClass, BlockHamiltonian,
)
from .ensembles import (
    RngStream, ShapeFunction, ShapeKind, BandModelSpec,
    sample_goe, sample_gue, sample_gaussian_ensemble, sample_band_matrix,
)
from .operators import (
    DeformedBlockSpec, OrbitalModelSpec, ModelKind,
    build_deformed_block, build_orbital_hamiltonian,
    restrict, rank_one_perturb, second_moment_exact, gauge_transform,
)
from .spectra import (
    Spectrum, count_in_interval, smoothed_count,
    resolvent_apply, fractional_moment_sample,
)
from .walks import SAWalk, enumerate_sa_walks, walk_expansion_resolvent
from .repformula import QuadratureSpec, RepresentationResult, representation_count, perron_stieltjes_count
from .estimators import (
    MCEstimate, DecayFit, fit_exponential_decay,
    run_wegner_experiment, run_minami_experiment, run_dos_histogram,
    run_localisation_experiment, run_band_localisation_experiment,
    run_band_wegner_experiment, run_single_block_tail, run_small_ball_check,
    check_lower_bound, run_perturbation_shift_check, run_walk_check, run_gauge_check,
)
from .utils import setup_logging, get_logger

__all__ = [
    # Exceptions
    "OrbitalRMTError",
    "InvalidArgumentError",
    "SingularityError",
    "AccuracyError",
    "ConfigValidationError",
    "ResultWriteError",

    # Types
    "Interval",
    "LatticeBox",
    "Site",
    "SymmetryClass",
    "BlockHamiltonian",

    # Ensembles
    "RngStream",
    "ShapeFunction",
    "ShapeKind",
    "BandModelSpec",
    "sample_goe",
    "sample_gue",
    "sample_gaussian_ensemble",
    "sample_band_matrix",

    # Operators
    "DeformedBlockSpec",
    "OrbitalModelSpec",
    "ModelKind",
    "build_deformed_block",
    "build_orbital_hamiltonian",
    "restrict",
    "rank_one_perturb",
    "second_moment_exact",
    "gauge_transform",

    # Spectra
    "Spectrum",
    "count_in_interval",
    "smoothed_count",
    "resolvent_apply",
    "fractional_moment_sample",

    # Walks
    "SAWalk",
    "enumerate_sa_walks",
    "walk_expansion_resolvent",

    # Representation formula
    "QuadratureSpec",
    "RepresentationResult",
    "representation_count",
    "perron_stieltjes_count",

    # Estimators
    "MCEstimate",
    "DecayFit",
    "fit_exponential_decay",
    "run_wegner_experiment",
    "run_minami_experiment",
    "run_dos_histogram",
    "run_localisation_experiment",
    "run_band_localisation_experiment",
    "run_band_wegner_experiment",
    "run_single_block_tail",
    "run_small_ball_check",
    "check_lower_bound",
    "run_perturbation_shift_check",
    "run_walk_check",
    "run_gauge_check",

    # Logging
    "setup_logging",
    "get_logger",
]
