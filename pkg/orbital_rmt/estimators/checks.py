"""
Checks on random instances: the walk expansion of resolvent blocks, the
representation formula for eigenvalue counts and gauge invariance of the
Wegner orbital model.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.stats

from ..constants import GAUGE_KS_LEVEL, GAUGE_POLYNOMIAL, MAX_REDRAWS
from ..ensembles import RngStream
from ..exceptions import InvalidArgumentError, SingularityError
from ..operators import (
    BlockGauge,
    DeformedBlockSpec,
    ModelKind,
    OrbitalModelSpec,
    build_deformed_block,
    build_orbital_hamiltonian,
    gauge_transform,
    sample_block_gauge,
)
from ..repformula import QuadratureSpec, RepresentationResult, representation_count
from ..spectra import as_interval, resolvent_block
from ..types import LatticeBox, SymmetryClass
from ..utils import ordered_map
from ..utils.logging import get_logger
from ..walks import walk_expansion_resolvent
from .sampling import check_sample_count, realization_streams
from .stats import MCEstimate

logger = get_logger(__name__)


@dataclass(frozen=True)
class WalkCheckInstance:
    instance: int
    kind: ModelKind
    d: int
    sites: int
    orbitals: int
    symmetry: SymmetryClass
    relative_error: float


WALK_CHECK_KINDS = (ModelKind.WEGNER_ORBITAL, ModelKind.BLOCK_ANDERSON)
WALK_CHECK_SYMMETRIES = (SymmetryClass.ORTHOGONAL, SymmetryClass.UNITARY)


def _walk_check_dimensions(max_sites: int) -> List[int]:
    return [d for d in (1, 2) if 3 ** d <= max_sites]


def _walk_task(task: Tuple[int, int, int, float, float, RngStream]) -> WalkCheckInstance:
    index, max_sites, max_orbitals, g, energy, stream = task
    gen = stream.generator()
    kind = WALK_CHECK_KINDS[index % 2]
    symmetry = WALK_CHECK_SYMMETRIES[(index // 2) % 2]
    dims = _walk_check_dimensions(max_sites)
    d = dims[(index // 4) % len(dims)]
    largest = int(round(max_sites ** (1.0 / d)))
    while largest ** d > max_sites:
        largest -= 1
    L = int(gen.integers(1, (largest - 1) // 2 + 1))
    N = int(gen.integers(1, max_orbitals + 1))
    spec = OrbitalModelSpec(LatticeBox(d, L), N, g, symmetry, kind)
    sites = spec.box.sites()
    x = sites[int(gen.integers(len(sites)))]
    y = sites[int(gen.integers(len(sites)))]
    for _ in range(MAX_REDRAWS + 1):
        H = build_orbital_hamiltonian(spec, gen)
        try:
            exact = resolvent_block(H, energy, x, y)
            walks = walk_expansion_resolvent(H, energy, x, y)
        except SingularityError:
            continue
        scale = max(float(np.linalg.norm(exact)), 1e-300)
        error = float(np.linalg.norm(walks - exact)) / scale
        return WalkCheckInstance(index, kind, d, len(sites), N, symmetry, error)
    raise SingularityError("Walk check instance stayed singular", energy=energy)


def run_walk_check(
    n_instances: int,
    rng: RngStream,
    max_sites: int = 6,
    max_orbitals: int = 3,
    g: float = 0.2,
    energy: float = 0.1,
    workers: Optional[int] = None,
) -> List[WalkCheckInstance]:
    """
    Compare the full walk expansion with the dense resolvent on random
    orbital instances.

    Instance i takes its model kind from i mod 2, its symmetry class from
    (i // 2) mod 2 and its dimension from i // 4, cycling over d = 1 and,
    when max_sites >= 9, d = 2. Eight instances cover every combination.
    Box size (up to max_sites sites), orbital count and site pair come
    from the instance's own substream.

    Returns:
        One entry per instance with the relative Frobenius error
    """
    n_instances = check_sample_count(n_instances, minimum=1)
    if max_sites < 3:
        raise InvalidArgumentError(f"max_sites must be >= 3, got {max_sites}")
    if max_orbitals < 1:
        raise InvalidArgumentError(f"max_orbitals must be >= 1, got {max_orbitals}")
    tasks = [
        (i, int(max_sites), int(max_orbitals), float(g), float(energy), stream)
        for i, stream in enumerate(realization_streams(rng, n_instances))
    ]
    results = ordered_map(_walk_task, tasks, workers)
    worst = max(r.relative_error for r in results)
    logger.debug(f"Walk check: worst relative error {worst:.3e} over {n_instances} instances")
    return results


def _representation_task(task: Tuple[DeformedBlockSpec, Any, QuadratureSpec, RngStream]) -> RepresentationResult:
    spec, interval, quad, stream = task
    H = build_deformed_block(spec, stream.substream(0))
    return representation_count(spec, H, interval, quad)


def run_representation_experiment(
    spec: DeformedBlockSpec,
    I: Any,
    quad: QuadratureSpec,
    n_samples: int,
    rng: RngStream,
    workers: Optional[int] = None,
) -> List[RepresentationResult]:
    """
    Push several deformed block realizations through representation_count.

    Raises:
        AccuracyError: If any realization's values move by more than 0.5
            between successive η refinements
    """
    n_samples = check_sample_count(n_samples, minimum=1)
    interval = as_interval(I)
    tasks = [(spec, interval, quad, stream) for stream in realization_streams(rng, n_samples)]
    results = ordered_map(_representation_task, tasks, workers)
    worst = max(r.error for r in results)
    logger.debug(f"Representation: worst finest-eta error {worst:.4f} over {n_samples} realizations")
    return results


@dataclass(frozen=True)
class GaugeCheckResult:
    """
    Two-sample comparison of a polynomial statistic over H and U H U*.

    Attributes:
        coefficients: p(t) = sum_k coefficients[k] t^k
        plain: Statistic over draws of H
        transformed: Statistic over independent draws of U H U*
        ks_statistic: Two-sample Kolmogorov-Smirnov distance
        p_value: Its p-value
    """

    coefficients: Tuple[float, ...]
    plain: MCEstimate
    transformed: MCEstimate
    ks_statistic: float
    p_value: float

    @property
    def passed(self) -> bool:
        return self.p_value > GAUGE_KS_LEVEL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coefficients": list(self.coefficients),
            "plain": self.plain.to_dict(),
            "transformed": self.transformed.to_dict(),
            "ks_statistic": self.ks_statistic,
            "p_value": self.p_value,
            "passed": self.passed,
        }


def polynomial_entry(H: np.ndarray, coefficients: Sequence[float], index: int = 0) -> float:
    """Re p(H)[index, index] by Horner's rule on one basis vector."""
    H = np.asarray(H)
    e = np.zeros(H.shape[0], dtype=H.dtype)
    e[index] = 1.0
    w = np.zeros_like(e)
    for c in reversed(coefficients):
        w = H @ w + c * e
    return float(np.real(w[index]))


def _gauge_task(task: Tuple[OrbitalModelSpec, Optional[BlockGauge], Tuple[float, ...], RngStream]) -> float:
    spec, gauge, coefficients, stream = task
    H = build_orbital_hamiltonian(spec, stream)
    if gauge is not None:
        H = gauge_transform(H, gauge)
    return polynomial_entry(H.matrix, coefficients)


def run_gauge_check(
    spec: OrbitalModelSpec,
    n_samples: int,
    rng: RngStream,
    coefficients: Sequence[float] = GAUGE_POLYNOMIAL,
    gauge: Optional[BlockGauge] = None,
    workers: Optional[int] = None,
) -> GaugeCheckResult:
    """
    Test that H and U H U* have the same law for a fixed block-diagonal U.

    The statistic is the first diagonal entry of p(H). Traces of p(H) are
    unchanged by any conjugation, draw by draw, so they cannot tell the two
    laws apart.

    Draw i of H uses rng.substream(i), draw i of U H U* uses
    rng.substream(n_samples + i), and a sampled gauge comes from
    rng.substream(2 n_samples).

    Args:
        spec: Wegner orbital model
        n_samples: Draws on each side
        rng: Experiment stream
        coefficients: Polynomial coefficients, constant term first
        gauge: Fixed blocks U(x); Haar-sampled when omitted
        workers: Process count

    Returns:
        GaugeCheckResult with the KS statistic and p-value

    Raises:
        InvalidArgumentError: If the model is not a Wegner orbital model or
            the polynomial is empty
    """
    if not isinstance(spec, OrbitalModelSpec) or spec.kind is not ModelKind.WEGNER_ORBITAL:
        raise InvalidArgumentError("Gauge invariance holds for the Wegner orbital model only")
    coefficients = tuple(float(c) for c in coefficients)
    if not coefficients:
        raise InvalidArgumentError("Polynomial needs at least one coefficient")
    n_samples = check_sample_count(n_samples)
    if gauge is None:
        sizes = [spec.N] * spec.box.size
        gauge = sample_block_gauge(sizes, spec.symmetry, rng.substream(2 * n_samples))
    streams = realization_streams(rng, 2 * n_samples)
    tasks = [(spec, None if i < n_samples else gauge, coefficients, s) for i, s in enumerate(streams)]
    values = np.array(ordered_map(_gauge_task, tasks, workers))
    plain, transformed = values[:n_samples], values[n_samples:]
    ks = scipy.stats.ks_2samp(plain, transformed)
    logger.debug(f"Gauge check: KS {ks.statistic:.4f}, p {ks.pvalue:.3f} over {n_samples} draws each")
    return GaugeCheckResult(
        coefficients,
        MCEstimate.from_values(plain),
        MCEstimate.from_values(transformed),
        float(ks.statistic),
        float(ks.pvalue),
    )
