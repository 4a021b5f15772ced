"""
Fractional-moment localisation experiments for orbital models and
Gaussian band matrices.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..constants import MAX_REDRAWS, REDRAW_WARNING_FRACTION
from ..ensembles import BandModelSpec, RngStream, ShapeFunction, ShapeKind, sample_sphere
from ..exceptions import InvalidArgumentError, SingularityError
from ..operators import OrbitalModelSpec, sample_edge_hopping
from ..spectra import check_fractional_exponent, check_unit_vector, operator_norm, resolvent_apply
from ..types import LatticeBox, Site, SymmetryClass
from ..utils import ordered_map
from ..utils.logging import get_logger
from .counting import check_band_divisibility
from .sampling import ModelSpec, check_sample_count, realization_streams, sample_model
from .stats import DecayFit, MCEstimate, fit_exponential_decay

logger = get_logger(__name__)

PROBES = ("e1", "sphere")

Pair = Tuple[Site, Site]


def default_pairs(box: LatticeBox, max_distance: Optional[int] = None) -> Tuple[Pair, ...]:
    """
    Pairs (x, y) along the first axis from the source y = (-L, 0, ..., 0).

    x runs over distances 0, 1, ..., min(max_distance, 2L).
    """
    reach = 2 * box.L if max_distance is None else min(int(max_distance), 2 * box.L)
    if reach < 0:
        raise InvalidArgumentError(f"max_distance must be >= 0, got {max_distance}")
    rest = (0,) * (box.d - 1)
    source = (-box.L,) + rest
    return tuple(((-box.L + r,) + rest, source) for r in range(reach + 1))


@dataclass(frozen=True)
class FractionalMomentConfig:
    """
    Parameters of E||G_λ(x, y) v||^s.

    Attributes:
        s: Exponent in (0, 1)
        energy: Spectral parameter λ
        probe: "e1" for the first unit vector, "sphere" for a uniform
            random unit vector per realization
        pairs: Site pairs (x, y); default_pairs(box) when empty
    """

    s: float = 0.5
    energy: float = 0.0
    probe: str = "e1"
    pairs: Tuple[Pair, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "s", check_fractional_exponent(self.s))
        object.__setattr__(self, "energy", float(self.energy))
        if self.probe not in PROBES:
            raise InvalidArgumentError(f"Probe must be one of {PROBES}, got {self.probe!r}")
        pairs = tuple((tuple(int(c) for c in x), tuple(int(c) for c in y)) for x, y in self.pairs)
        object.__setattr__(self, "pairs", pairs)

    def resolve_pairs(self, box: LatticeBox) -> Tuple[Pair, ...]:
        pairs = self.pairs or default_pairs(box)
        for x, y in pairs:
            if not (box.contains(x) and box.contains(y)):
                raise InvalidArgumentError(f"Pair {(x, y)} leaves the box {box}")
        return pairs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "energy": self.energy,
            "probe": self.probe,
            "pairs": [[list(x), list(y)] for x, y in self.pairs],
        }


@dataclass(frozen=True)
class LocalisationResult:
    """
    Fractional moments against ℓ¹ distance.

    Attributes:
        g: Coupling (orbital models) or bandwidth W (band matrices)
        distances: Distinct distances, increasing
        estimates: One estimate per distance; pairs at equal distance are
            averaged within each realization first
        fit: Exponential fit of log(mean) against distance
        redraws: Singular realizations that were redrawn
        n_samples: Realizations used
        g_eff: Empirical (E||W||^s)^{1/s}, when estimated
    """

    g: float
    distances: Tuple[int, ...]
    estimates: Tuple[MCEstimate, ...]
    fit: DecayFit
    redraws: int
    n_samples: int
    g_eff: Optional[float] = None

    @property
    def redraw_fraction(self) -> float:
        return self.redraws / (self.n_samples + self.redraws)


def _probe_vector(N: int, symmetry: SymmetryClass, probe: str, gen: np.random.Generator) -> np.ndarray:
    if probe == "sphere":
        return sample_sphere(N, symmetry, gen)
    v = np.zeros(N, dtype=symmetry.dtype)
    v[0] = 1.0
    return v


def _moment_task(task: Tuple[ModelSpec, FractionalMomentConfig, Tuple[Pair, ...], RngStream]) -> Tuple[np.ndarray, int]:
    spec, cfg, pairs, stream = task
    for attempt in range(MAX_REDRAWS + 1):
        gen = stream.substream(attempt).generator()
        H = sample_model(spec, gen)
        values = np.empty(len(pairs))
        try:
            columns: Dict[Site, np.ndarray] = {}
            for k, (x, y) in enumerate(pairs):
                if y not in columns:
                    size = H.block_sizes[H.block_index(y)]
                    v = check_unit_vector(_probe_vector(size, H.symmetry, cfg.probe, gen))
                    columns[y] = resolvent_apply(H, cfg.energy, y, v)
                block = columns[y][H.block_slice(H.block_index(x))]
                values[k] = float(np.linalg.norm(block)) ** cfg.s
        except SingularityError:
            continue
        return values, attempt
    raise SingularityError(f"Still singular after {MAX_REDRAWS} redraws", energy=cfg.energy)


def _fractional_moments(
    spec: ModelSpec,
    box: LatticeBox,
    cfg: FractionalMomentConfig,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int],
) -> Tuple[Tuple[int, ...], Tuple[MCEstimate, ...], int]:
    pairs = cfg.resolve_pairs(box)
    tasks = [(spec, cfg, pairs, stream) for stream in realization_streams(rng, n_samples)]
    outcomes = ordered_map(_moment_task, tasks, workers)
    values = np.array([o[0] for o in outcomes])
    redraws = sum(o[1] for o in outcomes)

    pair_distances = np.array([LatticeBox.distance(x, y) for x, y in pairs])
    distances = tuple(int(r) for r in np.unique(pair_distances))
    estimates = tuple(
        MCEstimate.from_values(values[:, pair_distances == r].mean(axis=1)) for r in distances
    )
    if redraws > REDRAW_WARNING_FRACTION * n_samples:
        logger.warning(
            f"{redraws} singular redraws over {n_samples} realizations at lambda={cfg.energy:g}"
        )
    return distances, estimates, redraws


def estimate_g_eff(spec: OrbitalModelSpec, s: float, n_samples: int, rng: RngStream) -> Tuple[float, MCEstimate]:
    """
    (E||W(x, y)||_op^s)^{1/s} for one edge's hopping block.

    Returns:
        (g_eff, estimate of E||W||^s)
    """
    s = check_fractional_exponent(s)
    n_samples = check_sample_count(n_samples, minimum=1)
    norms = [
        operator_norm(sample_edge_hopping(spec, stream.generator())) ** s
        for stream in realization_streams(rng, n_samples)
    ]
    estimate = MCEstimate.from_values(norms)
    return estimate.mean ** (1.0 / s), estimate


def run_localisation_experiment(
    spec: OrbitalModelSpec,
    cfg: FractionalMomentConfig,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
    fit_window: Optional[Tuple[int, int]] = None,
    g_eff_samples: int = 0,
) -> LocalisationResult:
    """
    Estimate E||G_λ(x, y) v||^s against ||x - y||_1 and fit its decay.

    Realizations where λ is numerically an eigenvalue are redrawn from a
    fresh substream; more than 1% redraws is logged as a warning.

    Args:
        spec: Orbital model
        cfg: Exponent, energy, probe and pairs
        n_samples: Realizations
        rng: Experiment stream
        workers: Process count
        fit_window: Inclusive distance range for the fit
        g_eff_samples: When positive, also estimate g_eff from this many
            hopping blocks drawn on rng.substream(n_samples)

    Returns:
        LocalisationResult
    """
    n_samples = check_sample_count(n_samples)
    distances, estimates, redraws = _fractional_moments(spec, spec.box, cfg, n_samples, rng, workers)
    g_eff = None
    if g_eff_samples > 0:
        g_eff, _ = estimate_g_eff(spec, cfg.s, g_eff_samples, rng.substream(n_samples))
    fit = fit_exponential_decay(distances, estimates, fit_window)
    logger.debug(f"Localisation g={spec.g:g}: slope {fit.slope}, r2 {fit.r_squared}")
    return LocalisationResult(spec.g, distances, estimates, fit, redraws, n_samples, g_eff)


def run_localisation_scan(
    spec: OrbitalModelSpec,
    cfg: FractionalMomentConfig,
    g_values: Sequence[float],
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
    fit_window: Optional[Tuple[int, int]] = None,
    g_eff_samples: int = 0,
) -> List[LocalisationResult]:
    """run_localisation_experiment at each coupling; coupling k uses rng.substream(k)."""
    return [
        run_localisation_experiment(
            spec.with_coupling(g), cfg, n_samples, rng.substream(k), workers, fit_window, g_eff_samples
        )
        for k, g in enumerate(g_values)
    ]


def run_band_localisation_experiment(
    spec: BandModelSpec,
    energy: float,
    s: float,
    n_samples: int,
    rng: RngStream,
    W_scan: Optional[Sequence[int]] = None,
    fit_window: Optional[Tuple[int, int]] = None,
    workers: Optional[int] = None,
) -> List[LocalisationResult]:
    """
    Entrywise E|(H_L - λ)⁻¹(i, j)|^s for sharp-cutoff band matrices.

    Each bandwidth must divide 2L+1. Bandwidth k of the scan uses
    rng.substream(k); without a scan only spec's own W is run.

    Returns:
        One LocalisationResult per bandwidth, with g holding W

    Raises:
        InvalidArgumentError: For a non-sharp shape, d != 1, or a
            bandwidth that does not divide 2L+1
    """
    if spec.shape.kind is not ShapeKind.SHARP_CUTOFF:
        raise InvalidArgumentError(f"Band localisation needs the sharp cutoff, got {spec.shape.kind}")
    if spec.box.d != 1:
        raise InvalidArgumentError("Band localisation runs in one dimension")
    n_samples = check_sample_count(n_samples)
    cfg = FractionalMomentConfig(s=s, energy=energy)
    scan = list(W_scan) if W_scan else [spec.shape.W]
    for W in scan:
        check_band_divisibility(spec.box.L, W)
    results = []
    for k, W in enumerate(scan):
        band = BandModelSpec(spec.box, ShapeFunction.sharp_cutoff(W, 1), spec.symmetry)
        distances, estimates, redraws = _fractional_moments(band, band.box, cfg, n_samples, rng.substream(k), workers)
        fit = fit_exponential_decay(distances, estimates, fit_window)
        logger.debug(f"Band localisation W={W}: slope {fit.slope}, r2 {fit.r_squared}")
        results.append(LocalisationResult(float(W), distances, estimates, fit, redraws, n_samples))
    return results
