"""
Fast oracle checks behind `orbital-rmt selftest`.

Each check returns (passed, detail). The whole suite is small enough to
run in seconds.
"""

from typing import Callable, List, Tuple

import numpy as np

from ..constants import WHOLE_LINE
from ..ensembles import RngStream, sample_goe, susy_kernel_closed_form_1d, susy_kernel_table
from ..estimators import MCEstimate, run_minami_experiment, run_small_ball_check, run_wegner_experiment
from ..operators import DeformedBlockSpec, ModelKind, OrbitalModelSpec, build_orbital_hamiltonian, rank_one_perturb
from ..repformula import QuadratureSpec, ave_quadrature, perron_stieltjes_count, poisson_identity_check
from ..spectra import check_interlacing, eig_hermitian, resolvent_block
from ..types import BlockHamiltonian, Interval, LatticeBox
from ..walks import walk_expansion_resolvent

CheckResult = Tuple[bool, str]


def _quadrature_normalization() -> CheckResult:
    value = ave_quadrature(lambda lam, t, xi: 1.0, Interval(-1.0, 1.0), 0.1, QuadratureSpec())
    return abs(value - 1.0) < 1e-10, f"Ave of 1 = {value:.15f}"


def _poisson_scalar() -> CheckResult:
    n = 3
    lhs, rhs = poisson_identity_check(np.zeros((n, n)), -np.eye(n), 1.0)
    return abs(lhs - n / 2) < 1e-9 and abs(rhs - n / 2) < 1e-6, f"lhs={lhs:.10f} rhs={rhs:.10f}"


def _perron_stieltjes_point() -> CheckResult:
    eta = 0.01
    value = perron_stieltjes_count(np.zeros((1, 1)), Interval(-1.0, 1.0), eta)
    expected = 2.0 * np.arctan(1.0 / eta) / np.pi
    return abs(value - expected) < 1e-4, f"{value:.6f} vs {expected:.6f}"


def _whole_line_count() -> CheckResult:
    spec = DeformedBlockSpec.zero((2, 3))
    result = run_wegner_experiment(spec, WHOLE_LINE, 4, RngStream(1), workers=1)
    return result.estimate.mean == spec.dim, f"mean count {result.estimate.mean} for dimension {spec.dim}"


def _minami_order_one() -> CheckResult:
    spec = DeformedBlockSpec.zero((3, 3))
    wegner = run_wegner_experiment(spec, (-0.5, 0.5), 8, RngStream(2), workers=1)
    minami = run_minami_experiment(spec, (-0.5, 0.5), 1, 8, RngStream(2), workers=1)
    same = wegner.estimate.mean == minami.factorial_moment.mean
    return same, f"{wegner.estimate.mean} vs {minami.factorial_moment.mean}"


def _walk_expansion_exact() -> CheckResult:
    spec = OrbitalModelSpec(LatticeBox(1, 1), 2, 0.3, kind=ModelKind.WEGNER_ORBITAL)
    H = build_orbital_hamiltonian(spec, RngStream(3))
    exact = resolvent_block(H, 0.1, (-1,), (1,))
    walks = walk_expansion_resolvent(H, 0.1, (-1,), (1,))
    error = float(np.linalg.norm(walks - exact) / np.linalg.norm(exact))
    return error < 1e-8, f"relative error {error:.2e}"


def _rank_one_interlacing() -> CheckResult:
    matrix = sample_goe(6, RngStream(4))
    H = BlockHamiltonian(matrix, (0, 3, 6), "orthogonal")
    v = np.array([1.0, 0.0, 0.0])
    after = rank_one_perturb(H, 0, v, 2.5)
    ok = check_interlacing(eig_hermitian(H.matrix), eig_hermitian(after.matrix))
    return ok, "positive rank-one update interlaces"


def _small_ball_identity() -> CheckResult:
    points = run_small_ball_check(np.eye(4), [0.5, 1.0], 50, RngStream(5))
    probs = [p.prob for p in points]
    return all(p == 0.0 for p in probs), f"probabilities {probs}"


def _susy_closed_form() -> CheckResult:
    table = susy_kernel_table(2, 1)
    worst = max(abs(table[r] - susy_kernel_closed_form_1d(2, r)) for r in range(6))
    return worst < 1e-7, f"max deviation {worst:.2e}"


def _merge_order() -> CheckResult:
    values = [0.1 * k for k in range(7)]
    tree = MCEstimate.from_values(values)
    left = MCEstimate.from_values(values[:4]).merge(MCEstimate.from_values(values[4:]))
    same = tree.n == left.n and abs(tree.total - left.total) < 1e-12
    return same, f"mean {tree.mean:.6f}"


CHECKS: List[Tuple[str, Callable[[], CheckResult]]] = [
    ("quadrature normalization", _quadrature_normalization),
    ("Poisson identity, X=0, Y=-Id", _poisson_scalar),
    ("Perron-Stieltjes single eigenvalue", _perron_stieltjes_point),
    ("whole-line count equals dimension", _whole_line_count),
    ("Minami m=1 equals Wegner mean", _minami_order_one),
    ("walk expansion equals resolvent", _walk_expansion_exact),
    ("rank-one interlacing", _rank_one_interlacing),
    ("small ball for the identity", _small_ball_identity),
    ("lattice Green kernel, 1D closed form", _susy_closed_form),
    ("estimate merge", _merge_order),
]


def run_selftest() -> List[Tuple[str, bool, str]]:
    """Run every check; an exception counts as a failure."""
    results = []
    for name, check in CHECKS:
        try:
            passed, detail = check()
        except Exception as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        results.append((name, bool(passed), detail))
    return results
