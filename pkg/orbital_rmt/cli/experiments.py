"""
Experiment registry: turns a validated config into a ResultRecord.
"""

from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..ensembles import RngStream, sample_gaussian_ensemble
from ..estimators import (
    FractionalMomentConfig,
    LocalisationResult,
    MCEstimate,
    check_lower_bound,
    default_pairs,
    run_band_localisation_experiment,
    run_band_wegner_experiment,
    run_dos_histogram,
    run_gauge_check,
    run_localisation_scan,
    run_minami_experiment,
    run_minami_scaling,
    run_perturbation_shift_check,
    run_representation_experiment,
    run_single_block_tail,
    run_small_ball_check,
    run_walk_check,
    run_wegner_experiment,
    semicircle_bin_average,
)
from ..repformula import QuadratureSpec
from ..types import SymmetryClass
from .config import ExperimentConfig
from .results import ResultRecord

Runner = Callable[[ExperimentConfig, Optional[int]], ResultRecord]


def _stream(config: ExperimentConfig) -> RngStream:
    return RngStream(config.seed)


def _fixed_matrix_stream(config: ExperimentConfig) -> RngStream:
    """Stream for matrices held fixed across realizations."""
    return RngStream(config.seed, stream_index=1)


def _estimate_fields(estimate: MCEstimate) -> Dict[str, Any]:
    return {"mean": estimate.mean if estimate.n else None, "stderr": estimate.stderr, "n": estimate.n}


def _record(config: ExperimentConfig, rows: List[Dict[str, Any]], summary: Dict[str, Any],
            diagnostics: Optional[Dict[str, Any]] = None) -> ResultRecord:
    return ResultRecord(config.experiment, config.to_dict(), rows, summary, diagnostics or {})


def _run_wegner(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    result = run_wegner_experiment(config.spec, config.params["interval"], config.n_samples, _stream(config), workers)
    row = {
        "interval_lower": result.interval.lower,
        "interval_upper": result.interval.upper,
        **_estimate_fields(result.estimate),
        "ratio": result.ratio.mean,
        "ratio_stderr": result.ratio.stderr,
    }
    return _record(config, [row], {"dimension": config.spec.dim, **result.to_dict()})


def _run_minami(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    if params["intervals"]:
        scaling = run_minami_scaling(
            config.spec, params["intervals"], params["m"], config.n_samples, _stream(config), workers
        )
        results = list(scaling.results)
        summary: Dict[str, Any] = {"m": params["m"], "scaling_fit": scaling.fit.to_dict(), "exponent": scaling.exponent}
    else:
        results = [run_minami_experiment(
            config.spec, params["interval"], params["m"], config.n_samples, _stream(config), workers
        )]
        summary = {"m": params["m"]}
    summary["jensen_holds"] = all(r.jensen_gap >= 0.0 for r in results)
    rows = [
        {
            "interval_lower": r.interval.lower,
            "interval_upper": r.interval.upper,
            "length": r.interval.length,
            "factorial_moment": r.factorial_moment.mean,
            "factorial_stderr": r.factorial_moment.stderr,
            "tail_prob": r.tail_prob.mean,
            "tail_stderr": r.tail_prob.stderr,
            "n": r.factorial_moment.n,
        }
        for r in results
    ]
    return _record(config, rows, summary)


def _localisation_rows(results: List[LocalisationResult], key: str) -> List[Dict[str, Any]]:
    return [
        {key: r.g, "distance": distance, **_estimate_fields(estimate)}
        for r in results
        for distance, estimate in zip(r.distances, r.estimates)
    ]


def _run_locdecay(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params, spec = config.params, config.spec
    cfg = FractionalMomentConfig(
        s=params["s"],
        energy=params["energy"],
        probe=params["probe"],
        pairs=default_pairs(spec.box, params["max_distance"]),
    )
    g_values = params["g_scan"] or [spec.g]
    results = run_localisation_scan(
        spec, cfg, g_values, config.n_samples, _stream(config), workers, g_eff_samples=config.n_samples
    )
    summary = {
        "fits": [{"g": r.g, "g_eff": r.g_eff, **r.fit.to_dict()} for r in results],
    }
    diagnostics = {"redraws": [{"g": r.g, "redraws": r.redraws, "fraction": r.redraw_fraction} for r in results]}
    return _record(config, _localisation_rows(results, "g"), summary, diagnostics)


def _run_dos(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    edges = np.linspace(params["lower"], params["upper"], params["bins"] + 1)
    histogram = run_dos_histogram(config.spec, edges, config.n_samples, _stream(config), workers)
    rows = [
        {"bin_lower": lo, "bin_upper": hi, **_estimate_fields(d), "sum_check": histogram.sum_check}
        for lo, hi, d in zip(histogram.edges[:-1], histogram.edges[1:], histogram.density)
    ]
    for row in rows:
        row["density"] = row.pop("mean")
    semicircle = semicircle_bin_average(histogram.edges)
    deviation = max(abs(d.mean - s) for d, s in zip(histogram.density, semicircle))
    return _record(config, rows, {"sum_check": histogram.sum_check, "semicircle_sup_difference": deviation})


def _run_bandloc(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    window = tuple(params["fit_window"]) if params["fit_window"] else None
    results = run_band_localisation_experiment(
        config.spec, params["energy"], params["s"], config.n_samples, _stream(config),
        W_scan=params["W_scan"], fit_window=window, workers=workers,
    )
    rates = [r.fit.rate for r in results]
    ordered = all(a is not None and b is not None and a >= b for a, b in zip(rates, rates[1:]))
    summary = {
        "fits": [{"W": int(r.g), **r.fit.to_dict()} for r in results],
        "rates_nonincreasing": ordered,
    }
    diagnostics = {"redraws": [{"W": int(r.g), "redraws": r.redraws} for r in results]}
    rows = _localisation_rows(results, "W")
    for row in rows:
        row["W"] = int(row["W"])
    return _record(config, rows, summary, diagnostics)


def _run_bandwegner(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    points = run_band_wegner_experiment(
        config.spec, params["W_scan"], params["interval"], config.n_samples, _stream(config), workers
    )
    rows = [
        {"W": p.W, **_estimate_fields(p.estimate), "ratio": p.ratio.mean, "ratio_stderr": p.ratio.stderr}
        for p in points
    ]
    ratios = [p.ratio.mean for p in points]
    spread = max(ratios) / min(ratios) if min(ratios) > 0 else None
    return _record(config, rows, {"ratio_spread": spread})


def _run_repformula(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    quad = QuadratureSpec.from_dict(config.params)
    results = run_representation_experiment(
        config.spec, config.params["interval"], quad, config.n_samples, _stream(config), workers
    )
    rows = [
        {"realization": i, "eta": eta, "value": value, "smoothed": smoothed, "exact": r.exact}
        for i, r in enumerate(results)
        for eta, value, smoothed in zip(r.etas, r.values, r.smoothed)
    ]
    summary = {
        "realizations": [{"realization": i, **r.to_dict(), "error": r.error} for i, r in enumerate(results)],
        "max_error": max(r.error for r in results),
    }
    return _record(config, rows, summary)


def _fixed_matrix(kind: str, N: int, scale: float, symmetry: SymmetryClass, config: ExperimentConfig) -> np.ndarray:
    if kind == "zero":
        return np.zeros((N, N), dtype=symmetry.dtype)
    if kind == "identity":
        return scale * np.eye(N, dtype=symmetry.dtype)
    if kind == "rank_one":
        A = np.zeros((N, N), dtype=symmetry.dtype)
        A[0, 0] = scale
        return A
    return scale * sample_gaussian_ensemble(N, symmetry, _fixed_matrix_stream(config))


def _run_tail(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    symmetry = SymmetryClass.from_str(params["symmetry"])
    A = _fixed_matrix(params["matrix"], params["N"], params["scale"], symmetry, config)
    result = run_single_block_tail(
        A, params["t_grid"], config.n_samples, _stream(config), symmetry=symmetry, s=params["s"], workers=workers
    )
    rows = [
        {"t": p.t, "tail_prob": p.prob, "stderr": p.stderr, "n": p.n, "t_times_prob": p.t_times_prob}
        for p in result.points
    ]
    products = [p.t_times_prob for p in result.points if p.prob > 0]
    summary = {
        "moment": _estimate_fields(result.moment),
        "moment_scale": result.moment_scale,
        "moment_ratio": result.moment_ratio,
        "t_times_prob_spread": max(products) / min(products) if products else None,
    }
    return _record(config, rows, summary)


def _run_smallball(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    symmetry = SymmetryClass.from_str(params["symmetry"])
    A = _fixed_matrix(params["matrix"], params["N"], params["scale"], symmetry, config)
    points = run_small_ball_check(A, params["eps_grid"], config.n_samples, _stream(config), symmetry)
    rows = [{"eps": p.eps, "prob": p.prob, "stderr": p.stderr, "n": p.n, "bound": p.bound} for p in points]
    return _record(config, rows, {"all_within_bound": all(p.satisfied for p in points)})


def _run_lowerbound(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    result = check_lower_bound(
        config.spec, params["t"], config.n_samples, _stream(config), t_over_s2=params["t_over_s2"], workers=workers
    )
    rows = [
        {"window_lower": w.lower, "window_upper": w.upper, **_estimate_fields(e)}
        for w, e in result.windows
    ]
    summary = {
        "s2": result.s2,
        "s2_empirical": result.s2_empirical,
        "found_interval": result.found_interval.to_list(),
        "best_mean": _estimate_fields(result.empirical_mean),
        "bound_value": result.bound_value,
        "satisfied": result.satisfied,
    }
    return _record(config, rows, summary)


def _run_pertshift(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    result = run_perturbation_shift_check(
        params["N"], params["a"], config.n_samples, _stream(config),
        coordination=params["coordination"],
        probe_window=params["probe_window"],
        probe_bins=params["probe_bins"],
        symmetry=params["symmetry"],
        workers=workers,
    )
    rows = []
    for b in result.bins:
        fields = _estimate_fields(b.shift)
        rows.append({
            "probe_center": b.center,
            "mean_shift": fields["mean"],
            "stderr": fields["stderr"],
            "n": fields["n"],
            "predicted": b.predicted,
        })
    return _record(config, rows, result.to_dict(), {"discard_rate": result.discard_rate})


def _run_walkcheck(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    params = config.params
    results = run_walk_check(
        config.n_samples, _stream(config),
        max_sites=params["max_sites"],
        max_orbitals=params["max_orbitals"],
        g=params["g"],
        energy=params["energy"],
        workers=workers,
    )
    rows = [
        {
            "instance": r.instance,
            "kind": r.kind.value,
            "d": r.d,
            "sites": r.sites,
            "orbitals": r.orbitals,
            "symmetry": r.symmetry.value,
            "relative_error": r.relative_error,
        }
        for r in results
    ]
    worst = max(r.relative_error for r in results)
    return _record(config, rows, {"max_relative_error": worst, "passed": worst <= 1e-8})


def _run_gauge(config: ExperimentConfig, workers: Optional[int]) -> ResultRecord:
    result = run_gauge_check(
        config.spec, config.n_samples, _stream(config), config.params["coefficients"], workers=workers
    )
    rows = [
        {"sample": "plain", **_estimate_fields(result.plain)},
        {"sample": "transformed", **_estimate_fields(result.transformed)},
    ]
    summary = {"ks_statistic": result.ks_statistic, "p_value": result.p_value, "passed": result.passed}
    return _record(config, rows, summary)


RUNNERS: Dict[str, Runner] = {
    "wegner": _run_wegner,
    "minami": _run_minami,
    "locdecay": _run_locdecay,
    "dos": _run_dos,
    "bandloc": _run_bandloc,
    "bandwegner": _run_bandwegner,
    "repformula": _run_repformula,
    "tail": _run_tail,
    "smallball": _run_smallball,
    "lowerbound": _run_lowerbound,
    "pertshift": _run_pertshift,
    "walkcheck": _run_walkcheck,
    "gauge": _run_gauge,
}


def run_experiment(config: ExperimentConfig, workers: Optional[int] = None) -> ResultRecord:
    """Run a validated config and collect its ResultRecord."""
    return RUNNERS[config.experiment](config, workers)
