"""
Monte Carlo experiment drivers.

Every driver takes an RngStream and derives realization i from
rng.substream(i), so results do not depend on the worker count.
"""

from .checks import (
    GaugeCheckResult,
    WalkCheckInstance,
    polynomial_entry,
    run_gauge_check,
    run_representation_experiment,
    run_walk_check,
)
from .counting import (
    BandWegnerPoint,
    DosHistogram,
    LowerBoundResult,
    MinamiResult,
    MinamiScaling,
    WegnerResult,
    check_band_divisibility,
    check_band_width,
    check_lower_bound,
    run_band_wegner_experiment,
    run_dos_histogram,
    run_minami_experiment,
    run_minami_scaling,
    run_wegner_experiment,
    semicircle_bin_average,
    semicircle_density,
)
from .localisation import (
    FractionalMomentConfig,
    LocalisationResult,
    default_pairs,
    estimate_g_eff,
    run_band_localisation_experiment,
    run_localisation_experiment,
    run_localisation_scan,
)
from .perturbation import PerturbationShiftResult, ShiftBin, predicted_shift, run_perturbation_shift_check
from .sampling import ModelSpec, sample_model, sample_spectra
from .single_block import SmallBallPoint, TailPoint, TailResult, run_single_block_tail, run_small_ball_check
from .stats import DecayFit, MCEstimate, binomial_stderr, fit_exponential_decay, fit_power_law

__all__ = [
    "GaugeCheckResult",
    "WalkCheckInstance",
    "polynomial_entry",
    "run_gauge_check",
    "run_representation_experiment",
    "run_walk_check",
    "BandWegnerPoint",
    "DosHistogram",
    "LowerBoundResult",
    "MinamiResult",
    "MinamiScaling",
    "WegnerResult",
    "check_band_divisibility",
    "check_band_width",
    "check_lower_bound",
    "run_band_wegner_experiment",
    "run_dos_histogram",
    "run_minami_experiment",
    "run_minami_scaling",
    "run_wegner_experiment",
    "semicircle_bin_average",
    "semicircle_density",
    "FractionalMomentConfig",
    "LocalisationResult",
    "default_pairs",
    "estimate_g_eff",
    "run_band_localisation_experiment",
    "run_localisation_experiment",
    "run_localisation_scan",
    "PerturbationShiftResult",
    "ShiftBin",
    "predicted_shift",
    "run_perturbation_shift_check",
    "ModelSpec",
    "sample_model",
    "sample_spectra",
    "SmallBallPoint",
    "TailPoint",
    "TailResult",
    "run_single_block_tail",
    "run_small_ball_check",
    "DecayFit",
    "MCEstimate",
    "binomial_stderr",
    "fit_exponential_decay",
    "fit_power_law",
]
