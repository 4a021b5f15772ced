"""
Experiment configuration: parsing, defaults and validation.

A config is a JSON object with the top-level keys listed in
CONFIG_KEYS. Validation collects every problem before reporting, and
never performs numerical work.
"""

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

from ..constants import (
    CONFIG_KEYS,
    DEFAULT_BASE_SEED,
    DEFAULT_N_SAMPLES,
    EXPERIMENT_DEFAULTS,
    EXPERIMENT_MODELS,
    EXPERIMENTS,
    MODEL_KEYS,
    SMALL_BALL_MATRICES,
    TAIL_MATRICES,
)
from ..ensembles import BandModelSpec, ShapeKind
from ..exceptions import ConfigValidationError, OrbitalRMTError
from ..operators import DeformedBlockSpec, ModelKind, OrbitalModelSpec
from ..repformula import QuadratureSpec
from ..types import SymmetryClass

ModelSpec = Union[OrbitalModelSpec, DeformedBlockSpec, BandModelSpec]

_MODEL_BUILDERS: Dict[str, Callable[[Dict[str, Any]], ModelSpec]] = {
    "orbital": OrbitalModelSpec.from_dict,
    "deformed": DeformedBlockSpec.from_dict,
    "band": BandModelSpec.from_dict,
}


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """
    A validated experiment configuration.

    Attributes:
        experiment: Experiment name
        model: Model block as given (None for experiments without a model)
        params: Experiment parameters with every default filled in
        seed: Base seed of the experiment stream
        n_samples: Realizations (or instances)
        output: Output path stem, or None
        record_timing: Whether wall-clock time enters the result files
        spec: The model built from the model block
    """

    experiment: str
    model: Optional[Dict[str, Any]]
    params: Dict[str, Any]
    seed: int
    n_samples: int
    output: Optional[str] = None
    record_timing: bool = False
    spec: Optional[ModelSpec] = field(default=None, repr=False)

    def with_output(self, output: Optional[str]) -> "ExperimentConfig":
        return ExperimentConfig(
            self.experiment, self.model, self.params, self.seed, self.n_samples,
            output, self.record_timing, self.spec,
        )

    def to_dict(self) -> Dict[str, Any]:
        """The fully resolved config, as echoed into result files."""
        return {
            "experiment": self.experiment,
            "model": copy.deepcopy(self.model),
            "params": copy.deepcopy(self.params),
            "seed": self.seed,
            "n_samples": self.n_samples,
            "output": self.output,
            "record_timing": self.record_timing,
        }


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


class _Checker:
    """Accumulates validation messages for one params block."""

    def __init__(self, params: Dict[str, Any], errors: List[str]):
        self.params = params
        self.errors = errors

    def fail(self, key: str, message: str) -> None:
        self.errors.append(f"params.{key}: {message}")

    def number(self, key: str, lower: Optional[float] = None, upper: Optional[float] = None,
               open_lower: bool = False, open_upper: bool = False, optional: bool = False) -> None:
        value = self.params.get(key)
        if value is None and optional:
            return
        if not _is_number(value):
            self.fail(key, f"expected a number, got {value!r}")
            return
        low_ok = lower is None or (value > lower if open_lower else value >= lower)
        high_ok = upper is None or (value < upper if open_upper else value <= upper)
        if not (low_ok and high_ok):
            left = "" if lower is None else f"{lower:g} {'<' if open_lower else '<='} "
            right = "" if upper is None else f" {'<' if open_upper else '<='} {upper:g}"
            self.fail(key, f"must satisfy {left}{key}{right}, got {value}")

    def integer(self, key: str, minimum: int, optional: bool = False) -> None:
        value = self.params.get(key)
        if value is None and optional:
            return
        if not _is_int(value) or value < minimum:
            self.fail(key, f"expected an integer >= {minimum}, got {value!r}")

    def interval(self, key: str, value: Any = None, label: Optional[str] = None) -> None:
        value = self.params.get(key) if value is None else value
        label = label or key
        if (
            not isinstance(value, (list, tuple))
            or len(value) != 2
            or not all(_is_number(v) for v in value)
            or not value[0] < value[1]
        ):
            self.errors.append(f"params.{label}: expected [lower, upper] with lower < upper, got {value!r}")

    def number_list(self, key: str, minimum: float, strict: bool = False, optional: bool = False) -> None:
        value = self.params.get(key)
        if value is None and optional:
            return
        if not isinstance(value, list) or not value or not all(_is_number(v) for v in value):
            self.fail(key, f"expected a nonempty list of numbers, got {value!r}")
            return
        bad = [v for v in value if (v <= minimum if strict else v < minimum)]
        if bad:
            self.fail(key, f"entries must be {'>' if strict else '>='} {minimum}, got {bad}")

    def choice(self, key: str, options: Any) -> None:
        if self.params.get(key) not in options:
            self.fail(key, f"must be one of {list(options)}, got {self.params.get(key)!r}")

    def symmetry(self, key: str = "symmetry") -> None:
        try:
            SymmetryClass.from_str(self.params.get(key))
        except (OrbitalRMTError, AttributeError, TypeError) as e:
            self.fail(key, str(e))


def _check_divisible(checker: _Checker, key: str, scan: List[Any], spec: Optional[ModelSpec]) -> None:
    if not isinstance(spec, BandModelSpec):
        return
    if spec.box.d != 1 and key == "W_scan":
        checker.errors.append("model.d: band experiments run in one dimension")
    side = 2 * spec.box.L + 1
    for W in scan:
        if not _is_int(W) or W < 1:
            checker.fail(key, f"bandwidths must be positive integers, got {W!r}")
        elif side % W:
            checker.fail(key, f"W={W} must be an integer dividing 2L+1 = {side}")


def _check_wegner(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.interval("interval")


def _check_minami(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.interval("interval")
    c.integer("m", 1)
    intervals = c.params.get("intervals")
    if intervals is not None:
        if not isinstance(intervals, list) or len(intervals) < 2:
            c.fail("intervals", f"expected a list of at least two intervals, got {intervals!r}")
        else:
            for k, interval in enumerate(intervals):
                c.interval("intervals", interval, f"intervals[{k}]")


def _check_locdecay(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.number("s", 0.0, 1.0, open_lower=True, open_upper=True)
    c.number("energy")
    c.choice("probe", ("e1", "sphere"))
    c.integer("max_distance", 0, optional=True)
    c.number_list("g_scan", 0.0, optional=True)


def _check_dos(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.number("lower")
    c.number("upper")
    c.integer("bins", 1)
    lower, upper = c.params.get("lower"), c.params.get("upper")
    if _is_number(lower) and _is_number(upper) and not lower < upper:
        c.fail("upper", f"must exceed lower = {lower}, got {upper}")


def _check_bandloc(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.number("s", 0.0, 1.0, open_lower=True, open_upper=True)
    c.number("energy")
    window = c.params.get("fit_window")
    if window is not None and not (
        isinstance(window, list) and len(window) == 2 and all(_is_int(v) for v in window) and window[0] < window[1]
    ):
        c.fail("fit_window", f"expected [first, last] distances, got {window!r}")
    if isinstance(spec, BandModelSpec) and spec.shape.kind is not ShapeKind.SHARP_CUTOFF:
        c.errors.append(f"model.shape.kind: band localisation needs sharpCutoff, got {spec.shape.kind}")
    scan = c.params.get("W_scan")
    if scan is None:
        scan = [spec.shape.W] if isinstance(spec, BandModelSpec) else []
    elif not isinstance(scan, list) or not scan:
        c.fail("W_scan", f"expected a nonempty list of bandwidths, got {scan!r}")
        return
    _check_divisible(c, "W_scan", scan, spec)


def _check_bandwegner(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.interval("interval")
    scan = c.params.get("W_scan")
    if not isinstance(scan, list) or not scan:
        c.fail("W_scan", f"expected a nonempty list of bandwidths, got {scan!r}")
        return
    if not isinstance(spec, BandModelSpec):
        return
    top = 2 * spec.box.L
    for W in scan:
        if not _is_int(W) or not 1 <= W <= top:
            c.fail("W_scan", f"W={W!r} must be an integer in [1, 2L] = [1, {top}]")


def _check_repformula(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.interval("interval")
    try:
        QuadratureSpec.from_dict(c.params)
    except (OrbitalRMTError, TypeError, ValueError) as e:
        c.errors.append(f"params: {e}")


def _check_tail(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.integer("N", 1)
    c.choice("matrix", TAIL_MATRICES)
    c.number("scale")
    c.number_list("t_grid", 1.0)
    c.number("s", 0.0, 1.0, open_lower=True, open_upper=True)
    c.symmetry()


def _check_smallball(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.integer("N", 1)
    c.choice("matrix", SMALL_BALL_MATRICES)
    c.number("scale")
    if _is_number(c.params.get("scale")) and c.params["scale"] == 0:
        c.fail("scale", "the small-ball bound needs A != 0")
    c.number_list("eps_grid", 0.0, strict=True)
    c.symmetry()


def _check_lowerbound(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.number("t", 0.0, open_lower=True, optional=True)
    c.number("t_over_s2", 0.0, 1.0, open_lower=True, open_upper=True)


def _check_pertshift(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.integer("N", 2)
    c.number("a", 0.0)
    c.integer("coordination", 1)
    c.number("probe_window", 0.0, 2.0, open_lower=True)
    c.integer("probe_bins", 1)
    c.symmetry()


def _check_walkcheck(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.integer("max_sites", 3)
    c.integer("max_orbitals", 1)
    c.number("g", 0.0)
    c.number("energy")


def _check_gauge(c: _Checker, spec: Optional[ModelSpec]) -> None:
    c.number_list("coefficients", -math.inf)
    if isinstance(spec, OrbitalModelSpec) and spec.kind is not ModelKind.WEGNER_ORBITAL:
        c.errors.append(f"model.kind: gauge invariance holds for wegnerOrbital only, got {spec.kind.value}")


_PARAM_CHECKS: Dict[str, Callable[[_Checker, Optional[ModelSpec]], None]] = {
    "wegner": _check_wegner,
    "minami": _check_minami,
    "locdecay": _check_locdecay,
    "dos": _check_dos,
    "bandloc": _check_bandloc,
    "bandwegner": _check_bandwegner,
    "repformula": _check_repformula,
    "tail": _check_tail,
    "smallball": _check_smallball,
    "lowerbound": _check_lowerbound,
    "pertshift": _check_pertshift,
    "walkcheck": _check_walkcheck,
    "gauge": _check_gauge,
}


def _build_model(experiment: str, model: Any, errors: List[str]) -> Optional[ModelSpec]:
    allowed = EXPERIMENT_MODELS[experiment]
    if not allowed:
        if model is not None:
            errors.append(f"model: experiment {experiment!r} takes no model block")
        return None
    if not isinstance(model, dict):
        errors.append(f"model: experiment {experiment!r} needs a model block of type {list(allowed)}")
        return None
    kind = model.get("type")
    if kind not in allowed:
        errors.append(f"model.type: experiment {experiment!r} accepts {list(allowed)}, got {kind!r}")
        return None
    unknown = sorted(set(model) - set(MODEL_KEYS[kind]))
    for key in unknown:
        errors.append(f"model.{key}: unknown key for a {kind} model")
    if unknown:
        return None
    try:
        return _MODEL_BUILDERS[kind](model)
    except KeyError as e:
        errors.append(f"model.{e.args[0]}: missing required key")
    except (OrbitalRMTError, TypeError, ValueError) as e:
        errors.append(f"model: {e}")
    return None


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse and validate a JSON experiment config.

    Args:
        text: The config document

    Returns:
        ExperimentConfig with all defaults filled in

    Raises:
        ConfigValidationError: Listing every problem found
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigValidationError([f"not valid JSON: {e}"])
    if not isinstance(data, dict):
        raise ConfigValidationError(["the config must be a JSON object"])

    errors: List[str] = [f"{key}: unknown top-level key" for key in sorted(set(data) - set(CONFIG_KEYS))]
    experiment = data.get("experiment")
    if experiment not in EXPERIMENTS:
        errors.append(f"experiment: must be one of {EXPERIMENTS}, got {experiment!r}")
        raise ConfigValidationError(errors)

    seed = data.get("seed", DEFAULT_BASE_SEED)
    if not _is_int(seed) or seed < 0:
        errors.append(f"seed: expected a non-negative integer, got {seed!r}")
    n_samples = data.get("n_samples", DEFAULT_N_SAMPLES)
    minimum = 1 if experiment in ("walkcheck", "repformula") else 2
    if not _is_int(n_samples) or n_samples < minimum:
        errors.append(f"n_samples: expected an integer >= {minimum}, got {n_samples!r}")
    output = data.get("output")
    if output is not None and (not isinstance(output, str) or not output):
        errors.append(f"output: expected a path string, got {output!r}")
    record_timing = data.get("record_timing", False)
    if not isinstance(record_timing, bool):
        errors.append(f"record_timing: expected true or false, got {record_timing!r}")

    model = data.get("model")
    spec = _build_model(experiment, model, errors)

    given = data.get("params", {})
    if not isinstance(given, dict):
        errors.append(f"params: expected an object, got {type(given).__name__}")
        given = {}
    defaults = EXPERIMENT_DEFAULTS[experiment]
    for key in sorted(set(given) - set(defaults)):
        errors.append(f"params.{key}: unknown parameter for {experiment}")
    params = copy.deepcopy(defaults)
    params.update({k: copy.deepcopy(v) for k, v in given.items() if k in defaults})
    _PARAM_CHECKS[experiment](_Checker(params, errors), spec)

    if errors:
        raise ConfigValidationError(errors)
    return ExperimentConfig(
        experiment=experiment,
        model=copy.deepcopy(model),
        params=params,
        seed=seed,
        n_samples=n_samples,
        output=output,
        record_timing=record_timing,
        spec=spec,
    )


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read and validate a config file.

    Raises:
        ConfigValidationError: If the file is unreadable or invalid
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigValidationError([f"cannot read {path}: {e.strerror or e}"])
    return parse_config(text)
