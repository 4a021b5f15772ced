"""
Second-order eigenvalue shifts when weak hopping g = a/√N is switched on.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..ensembles import RngStream, sample_gaussian_ensemble, sample_hopping_block
from ..exceptions import InvalidArgumentError
from ..spectra import eig_hermitian
from ..types import SymmetryClass
from ..utils import ordered_map
from ..utils.logging import get_logger
from .counting import semicircle_density
from .sampling import check_sample_count, realization_streams
from .stats import MCEstimate

logger = get_logger(__name__)


@dataclass(frozen=True)
class ShiftBin:
    center: float
    shift: MCEstimate
    predicted: float


@dataclass(frozen=True)
class PerturbationShiftResult:
    """
    Mean eigenvalue shift of the central block against energy.

    Attributes:
        bins: Probe bins over [-window, window]
        coefficient: Least-squares κ in shift ≈ κ λ, through the origin
        coefficient_stderr: Its standard error
        predicted_coefficient: coordination * a²/(2N)
        tracked: Eigenvalues followed across the switch-on
        discarded: Tracks dropped because a neighbor sat within a
            quarter spacing
    """

    N: int
    a: float
    coordination: int
    bins: Tuple[ShiftBin, ...]
    coefficient: Optional[float]
    coefficient_stderr: Optional[float]
    predicted_coefficient: float
    tracked: int
    discarded: int

    @property
    def discard_rate(self) -> float:
        total = self.tracked + self.discarded
        return self.discarded / total if total else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coefficient": self.coefficient,
            "coefficient_stderr": self.coefficient_stderr,
            "predicted_coefficient": self.predicted_coefficient,
            "tracked": self.tracked,
            "discarded": self.discarded,
            "discard_rate": self.discard_rate,
        }


def predicted_shift(energy: float, N: int, a: float, coordination: int) -> float:
    """coordination * a² λ/(2N), from the semicircle Stieltjes transform."""
    return coordination * a * a * energy / (2.0 * N)


def _star_matrices(
    N: int, a: float, coordination: int, symmetry: SymmetryClass, gen: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """Uncoupled and coupled matrices on a star: site 0 joined to each leaf."""
    sites = coordination + 1
    dim = sites * N
    H0 = np.zeros((dim, dim), dtype=symmetry.dtype)
    for k in range(sites):
        block = slice(k * N, (k + 1) * N)
        H0[block, block] = sample_gaussian_ensemble(N, symmetry, gen)
    H = H0.copy()
    g = a / math.sqrt(N)
    for k in range(1, sites):
        hop = g * sample_hopping_block(N, 1.0 / N, symmetry, gen)
        H[:N, k * N:(k + 1) * N] = hop
        H[k * N:(k + 1) * N, :N] = hop.conj().T
    return H0, H


def _shift_task(task: Tuple[int, float, int, SymmetryClass, float, RngStream]) -> Tuple[np.ndarray, np.ndarray, int]:
    N, a, coordination, symmetry, window, stream = task
    H0, H = _star_matrices(N, a, coordination, symmetry, stream.generator())
    blocks = [eig_hermitian(H0[k * N:(k + 1) * N, k * N:(k + 1) * N]).eigenvalues for k in range(coordination + 1)]
    labels = np.repeat(np.arange(coordination + 1), N)
    order = np.argsort(np.concatenate(blocks), kind="stable")
    before = np.concatenate(blocks)[order]
    is_center = labels[order] == 0
    after = eig_hermitian(H).eigenvalues

    # Sorted order is the tracking: shifts are far below the level spacing.
    gaps = np.full(before.size, np.inf)
    gaps[1:] = np.minimum(gaps[1:], np.diff(before))
    gaps[:-1] = np.minimum(gaps[:-1], np.diff(before))
    density = np.maximum(semicircle_density(before), 1e-3) * before.size
    ambiguous = gaps < 0.25 / density

    inside = is_center & (np.abs(before) <= window)
    keep = inside & ~ambiguous
    return before[keep], (after - before)[keep], int(np.count_nonzero(inside & ambiguous))


def run_perturbation_shift_check(
    N: int,
    a: float,
    n_samples: int,
    rng: RngStream,
    coordination: int = 1,
    probe_window: float = 1.8,
    probe_bins: int = 6,
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL,
    workers: Optional[int] = None,
) -> PerturbationShiftResult:
    """
    Compare mean eigenvalue shifts with coordination * a² λ/(2N).

    A central N x N GOE/GUE block is coupled to `coordination` independent
    blocks by Wegner hopping at g = a/√N. Eigenvalues of the central block
    inside [-probe_window, probe_window] are followed by sorted order;
    those with another eigenvalue within a quarter of the local spacing
    are discarded and counted.

    Args:
        N: Orbitals per site, at least 2
        a: Scaled coupling
        n_samples: Realizations
        rng: Experiment stream
        coordination: Number of neighbors of the central site
        probe_window: Half-width of the probed energy range
        probe_bins: Number of equal bins over the range
        symmetry: Symmetry class
        workers: Process count

    Returns:
        PerturbationShiftResult
    """
    if isinstance(N, bool) or int(N) != N or N < 2:
        raise InvalidArgumentError(f"N must be an integer >= 2, got {N!r}")
    if isinstance(coordination, bool) or int(coordination) != coordination or coordination < 1:
        raise InvalidArgumentError(f"coordination must be a positive integer, got {coordination!r}")
    if not 0.0 < probe_window <= 2.0:
        raise InvalidArgumentError(f"probe_window must lie in (0, 2], got {probe_window}")
    if a < 0:
        raise InvalidArgumentError(f"a must be >= 0, got {a}")
    N, coordination = int(N), int(coordination)
    symmetry = SymmetryClass.from_str(symmetry)
    n_samples = check_sample_count(n_samples)

    tasks = [(N, float(a), coordination, symmetry, float(probe_window), s) for s in realization_streams(rng, n_samples)]
    outcomes = ordered_map(_shift_task, tasks, workers)
    energies = np.concatenate([o[0] for o in outcomes])
    shifts = np.concatenate([o[1] for o in outcomes])
    discarded = sum(o[2] for o in outcomes)

    edges = np.linspace(-probe_window, probe_window, int(probe_bins) + 1)
    bins: List[ShiftBin] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mask = (energies >= lo) & (energies < hi)
        center = 0.5 * (lo + hi)
        bins.append(ShiftBin(float(center), MCEstimate.from_values(shifts[mask]), predicted_shift(center, N, a, coordination)))

    coefficient = coefficient_stderr = None
    sxx = float(np.sum(energies ** 2))
    if energies.size > 1 and sxx > 0:
        coefficient = float(np.sum(energies * shifts)) / sxx
        residual = shifts - coefficient * energies
        coefficient_stderr = math.sqrt(float(np.sum(residual ** 2)) / (energies.size - 1) / sxx)

    result = PerturbationShiftResult(
        N=N,
        a=float(a),
        coordination=coordination,
        bins=tuple(bins),
        coefficient=coefficient,
        coefficient_stderr=coefficient_stderr,
        predicted_coefficient=coordination * a * a / (2.0 * N),
        tracked=int(energies.size),
        discarded=discarded,
    )
    if result.discard_rate > 0.25:
        logger.warning(f"Discarded {result.discard_rate:.1%} of eigenvalue tracks as ambiguous")
    return result
