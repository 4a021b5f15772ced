"""
Single-block experiments: the resolvent tail of A + V and the small-ball
bound for uniform sphere vectors.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..ensembles import RngStream, sample_gaussian_ensemble, sample_sphere
from ..exceptions import InvalidArgumentError, SingularityError
from ..constants import MAX_REDRAWS
from ..spectra import check_fractional_exponent, check_unit_vector, operator_norm, resolvent_apply
from ..types import BlockHamiltonian, SymmetryClass, require_hermitian
from ..utils import ordered_map
from ..utils.logging import get_logger
from .sampling import check_sample_count, realization_streams
from .stats import MCEstimate, binomial_stderr

logger = get_logger(__name__)


@dataclass(frozen=True)
class TailPoint:
    t: float
    prob: float
    stderr: float
    n: int

    @property
    def t_times_prob(self) -> float:
        return self.t * self.prob


@dataclass(frozen=True)
class TailResult:
    """
    Empirical P{||(A+V)⁻¹v|| >= t√N ||v||} on a t grid.

    Attributes:
        points: One entry per t
        moment: Estimate of E||(A+V)⁻¹v||^s
        s: The exponent of moment
        moment_scale: N^{s/2}/(1 - s), the shape moment is compared with
    """

    points: Tuple[TailPoint, ...]
    moment: MCEstimate
    s: float
    moment_scale: float

    @property
    def moment_ratio(self) -> float:
        return self.moment.mean / self.moment_scale


@dataclass(frozen=True)
class SmallBallPoint:
    eps: float
    prob: float
    stderr: float
    n: int

    @property
    def bound(self) -> float:
        return 5.0 * self.eps

    @property
    def satisfied(self) -> bool:
        """P̂ <= 5ε + 3 stderr."""
        return self.prob <= self.bound + 3.0 * self.stderr


def _tail_task(task: Tuple[np.ndarray, np.ndarray, SymmetryClass, RngStream]) -> float:
    A, v, symmetry, stream = task
    for attempt in range(MAX_REDRAWS + 1):
        gen = stream.substream(attempt).generator()
        matrix = A + sample_gaussian_ensemble(A.shape[0], symmetry, gen)
        H = BlockHamiltonian(matrix, (0, A.shape[0]), symmetry)
        try:
            return float(np.linalg.norm(resolvent_apply(H, 0.0, 0, v)))
        except SingularityError:
            continue
    raise SingularityError(f"A + V stayed singular after {MAX_REDRAWS} redraws", energy=0.0)


def run_single_block_tail(
    A: np.ndarray,
    t_grid: Sequence[float],
    n_samples: int,
    rng: RngStream,
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL,
    s: float = 0.5,
    v: Optional[np.ndarray] = None,
    workers: Optional[int] = None,
) -> TailResult:
    """
    Tail of ||(A + V)⁻¹ v|| for a GOE/GUE matrix V and fixed Hermitian A.

    Args:
        A: Fixed N x N Hermitian matrix
        t_grid: Thresholds, each >= 1
        n_samples: Realizations of V
        rng: Experiment stream
        symmetry: Class of V
        s: Exponent for the fractional moment, in (0, 1)
        v: Unit probe vector; e₁ by default
        workers: Process count

    Returns:
        TailResult with binomial standard errors
    """
    symmetry = SymmetryClass.from_str(symmetry)
    A = require_hermitian(np.asarray(A, dtype=symmetry.dtype), "A")
    N = A.shape[0]
    s = check_fractional_exponent(s)
    n_samples = check_sample_count(n_samples)
    t_values = [float(t) for t in t_grid]
    if not t_values or any(t < 1.0 for t in t_values):
        raise InvalidArgumentError(f"Tail thresholds must be >= 1, got {t_values}")
    if v is None:
        v = np.zeros(N, dtype=A.dtype)
        v[0] = 1.0
    v = check_unit_vector(v)

    tasks = [(A, v, symmetry, stream) for stream in realization_streams(rng, n_samples)]
    norms = np.array(ordered_map(_tail_task, tasks, workers))
    points = []
    for t in t_values:
        prob = float(np.mean(norms >= t * np.sqrt(N)))
        points.append(TailPoint(t, prob, binomial_stderr(prob, n_samples), n_samples))
    return TailResult(
        points=tuple(points),
        moment=MCEstimate.from_values(norms ** s),
        s=s,
        moment_scale=N ** (s / 2.0) / (1.0 - s),
    )


def run_small_ball_check(
    A: np.ndarray,
    eps_grid: Sequence[float],
    n_samples: int,
    rng: RngStream,
    symmetry: SymmetryClass = SymmetryClass.ORTHOGONAL,
) -> List[SmallBallPoint]:
    """
    Empirical P{||Av|| <= (ε/√N)||A||_op} for v uniform on the unit sphere.

    Raises:
        InvalidArgumentError: If A is zero or not square
    """
    symmetry = SymmetryClass.from_str(symmetry)
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidArgumentError(f"A must be square, got shape {A.shape}")
    norm = operator_norm(A)
    if norm == 0.0:
        raise InvalidArgumentError("The small-ball bound needs A != 0")
    n_samples = check_sample_count(n_samples)
    N = A.shape[0]
    ratios = np.array(
        [
            np.linalg.norm(A @ sample_sphere(N, symmetry, stream.generator())) * np.sqrt(N) / norm
            for stream in realization_streams(rng, n_samples)
        ]
    )
    points = []
    for eps in eps_grid:
        eps = float(eps)
        if eps <= 0:
            raise InvalidArgumentError(f"eps must be positive, got {eps}")
        prob = float(np.mean(ratios <= eps))
        points.append(SmallBallPoint(eps, prob, binomial_stderr(prob, n_samples), n_samples))
        if not points[-1].satisfied:
            logger.warning(f"Small-ball probability {prob:.4f} exceeds 5*eps={5 * eps:g} at eps={eps:g}")
    return points
