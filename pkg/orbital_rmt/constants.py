"""
Constants and defaults for orbital-rmt.

This is the single defaults table: numerical tolerances, quadrature
resolutions, and per-experiment parameter defaults. The `describe`
subcommand prints from here.
"""

from typing import Any, Dict, List, Tuple

# Result file format
SCHEMA_VERSION = "1.0"

# Environment variables
WORKERS_ENV_VAR = "ORBITAL_RMT_WORKERS"
LOG_LEVEL_ENV_VAR = "ORBITAL_RMT_LOG_LEVEL"
NO_COLOR_ENV_VAR = "ORBITAL_RMT_NO_COLOR"

# Default seed when a config omits one
DEFAULT_BASE_SEED = 20160401

# Linear algebra tolerances
HERMITIAN_RTOL = 1e-12
UNIT_VECTOR_TOL = 1e-12
INTERLACING_RTOL = 1e-9
ENDPOINT_NUDGE_RTOL = 1e-9
SINGULAR_DISTANCE = 1e-10
WALK_CONDITION_LIMIT = 1e12

# Rank-one limit tau = TAU_LIMIT_FACTOR * ||H||_op
TAU_LIMIT_FACTOR = 1e8

# Lattice Green function quadrature
SUSY_MIN_POINTS_PER_W = 64
SUSY_MIN_POINTS = 64
SUSY_TOLERANCE = 1e-8
SUSY_MAX_GRID_POINTS = 2 ** 24
# Table entries at or below this are replaced by the heat-kernel integral.
SUSY_TAIL_THRESHOLD = 1e-6

# Triple quadrature for the representation formula
T_NODES = 201
XI_NODES = 201
LAMBDA_NODES_MIN = 101
LAMBDA_NODES_PER_ETA = 4.0
ETA_SCHEDULE: Tuple[float, ...] = (0.1, 0.05, 0.025)
REPRESENTATION_MISMATCH_LIMIT = 0.5

# Poisson identity quadrature
POISSON_QUAD_LIMIT = 2000
POISSON_TOLERANCE = 1e-11
NEGATIVE_SEMIDEFINITE_TOL = 1e-10

# Monte Carlo data quality
REDRAW_WARNING_FRACTION = 0.01
MAX_REDRAWS = 100

# Gauge invariance: two-sample KS level and the default polynomial p(t) = t + t^2
GAUGE_KS_LEVEL = 0.01
GAUGE_POLYNOMIAL = (0.0, 1.0, 1.0)

# Interval standing in for the whole real line
WHOLE_LINE = (-1e6, 1e6)

EXPERIMENTS: List[str] = [
    "wegner",
    "minami",
    "locdecay",
    "dos",
    "bandloc",
    "bandwegner",
    "repformula",
    "tail",
    "smallball",
    "lowerbound",
    "pertshift",
    "walkcheck",
    "gauge",
]

# Parameter defaults per experiment. A config may override any key listed
# here and no other.
EXPERIMENT_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "wegner": {"interval": [-0.025, 0.025]},
    "minami": {"interval": [-0.05, 0.05], "m": 2, "intervals": None},
    "locdecay": {"s": 0.5, "energy": 0.0, "probe": "e1", "max_distance": None, "g_scan": None},
    "dos": {"lower": -2.2, "upper": 2.2, "bins": 40},
    "bandloc": {"s": 0.5, "energy": 0.0, "W_scan": [3, 7, 21], "fit_window": None},
    "bandwegner": {"interval": [-0.05, 0.05], "W_scan": [3, 7, 21]},
    "repformula": {
        "interval": [-1.0, 1.0],
        "eta_schedule": list(ETA_SCHEDULE),
        "t_nodes": T_NODES,
        "xi_nodes": XI_NODES,
        "lambda_nodes_min": LAMBDA_NODES_MIN,
        "lambda_nodes_per_eta": LAMBDA_NODES_PER_ETA,
    },
    "tail": {"N": 16, "matrix": "zero", "scale": 1.0, "t_grid": [1.0, 2.0, 4.0, 8.0], "s": 0.5, "symmetry": "orthogonal"},
    "smallball": {"N": 16, "matrix": "random", "scale": 1.0, "eps_grid": [0.01, 0.05, 0.2], "symmetry": "orthogonal"},
    "lowerbound": {"t": None, "t_over_s2": 0.25},
    "pertshift": {"N": 64, "a": 0.2, "coordination": 1, "probe_window": 1.8, "probe_bins": 6, "symmetry": "orthogonal"},
    "walkcheck": {"max_sites": 9, "max_orbitals": 3, "g": 0.2, "energy": 0.1},
    "gauge": {"coefficients": list(GAUGE_POLYNOMIAL)},
}

# Model types each experiment accepts; an empty tuple means no model block.
EXPERIMENT_MODELS: Dict[str, Tuple[str, ...]] = {
    "wegner": ("orbital", "deformed", "band"),
    "minami": ("orbital", "deformed", "band"),
    "locdecay": ("orbital",),
    "dos": ("orbital", "deformed", "band"),
    "bandloc": ("band",),
    "bandwegner": ("band",),
    "repformula": ("deformed",),
    "tail": (),
    "smallball": (),
    "lowerbound": ("orbital", "deformed", "band"),
    "pertshift": (),
    "walkcheck": (),
    "gauge": ("orbital",),
}

MODEL_KEYS: Dict[str, Tuple[str, ...]] = {
    "orbital": ("type", "d", "L", "N", "g", "symmetry", "kind"),
    "deformed": ("type", "block_sizes", "H0", "symmetry"),
    "band": ("type", "d", "L", "shape", "symmetry"),
}

CONFIG_KEYS: Tuple[str, ...] = ("experiment", "model", "params", "seed", "n_samples", "output", "record_timing")
DEFAULT_N_SAMPLES = 100

# Fixed matrices A for the single-block experiments
TAIL_MATRICES: Tuple[str, ...] = ("zero", "identity", "random")
SMALL_BALL_MATRICES: Tuple[str, ...] = ("identity", "rank_one", "random")

# The bound each experiment exercises.
EXPERIMENT_CITATIONS: Dict[str, str] = {
    "wegner": "Wegner estimate for deformed block-Gaussian matrices: E N(H, I) <= C sum_j N_j |I| "
              "(and for orbital models in finite volume, E N(H_Lambda, I) <= C N |Lambda| |I|).",
    "minami": "Minami estimate: E prod_{l<m} (N(H, I) - l) <= (C sum_j N_j |I|)^m, "
              "hence P{N(H, I) >= m} <= (C sum_j N_j |I|)^m / m!.",
    "locdecay": "Fractional-moment localisation: E||(H_Lambda - lambda)^{-1}(x, y) v||^s decays "
                "exponentially in ||x - y||_1 when g_eff is below {(1-s)/(Cd)}^{1/s} / sqrt(N).",
    "dos": "Density of states rho_H = lim E N(H_Lambda, .) / (N (2L+1)^d); "
           "at g = 0 it is Wigner's semicircle (2 pi)^{-1} sqrt((4 - x^2)_+).",
    "bandloc": "Localisation of 1D Gaussian band matrices with sharp cutoff psi(r) = 1/W for |r| < W "
               "and W dividing 2L+1: E|(H_L - lambda)^{-1}(i, j)|^s <= A W^{s/2} exp(-alpha |i-j| / W^7).",
    "bandwegner": "Wegner estimate for Gaussian band matrices: E N(H_L, I) <= C (2L+1)^d |I| "
                  "uniformly in the bandwidth W.",
    "repformula": "Representation of the eigenvalue count through single-block counts: "
                  "N(H, I)/|I| = lim_{eta->0} sum_j Ave (1/(2 xi)) N(V(j) + A(j, lambda, eta, t), (-xi, xi)).",
    "tail": "Single-block regularisation: P{||(A+V)^{-1} v|| >= t sqrt(N) ||v||} <= C/t for t >= 1, "
            "and E||(A+V)^{-1} v||^s <= C_0 N^{s/2} ||v||^s / (1-s).",
    "smallball": "Small-ball bound for a uniform sphere vector: P{||A v|| <= eps ||A||_op / sqrt(N)} <= 5 eps.",
    "lowerbound": "Complementary lower bound: some I in [-2 s_2, 2 s_2] with |I| = t < s_2 has "
                  "E N(H, I) >= sum_j N_j |I| / (10 s_2), where s_2^2 = E tr H^2 / sum_j N_j.",
    "pertshift": "Second-order perturbation heuristic at g = a/sqrt(N): eigenvalues shift by about "
                 "a^2 d lambda / N, comparable to the mean level spacing.",
    "walkcheck": "Self-avoiding-walk representation of resolvent blocks on a finite box, "
                 "exact when all walks are summed.",
    "gauge": "Local gauge invariance of the Wegner orbital model: H and U H U* have the same law "
             "for any fixed block-diagonal U = (+)_x U(x), orthogonal or unitary by symmetry class.",
}

# Fixed CSV column order per experiment.
CSV_COLUMNS: Dict[str, List[str]] = {
    "wegner": ["interval_lower", "interval_upper", "mean", "stderr", "n", "ratio", "ratio_stderr"],
    "minami": ["interval_lower", "interval_upper", "length", "factorial_moment", "factorial_stderr",
               "tail_prob", "tail_stderr", "n"],
    "locdecay": ["g", "distance", "mean", "stderr", "n"],
    "dos": ["bin_lower", "bin_upper", "density", "stderr", "n", "sum_check"],
    "bandloc": ["W", "distance", "mean", "stderr", "n"],
    "bandwegner": ["W", "mean", "stderr", "n", "ratio", "ratio_stderr"],
    "repformula": ["realization", "eta", "value", "smoothed", "exact"],
    "tail": ["t", "tail_prob", "stderr", "n", "t_times_prob"],
    "smallball": ["eps", "prob", "stderr", "n", "bound"],
    "lowerbound": ["window_lower", "window_upper", "mean", "stderr", "n"],
    "pertshift": ["probe_center", "mean_shift", "stderr", "n", "predicted"],
    "walkcheck": ["instance", "kind", "d", "sites", "orbitals", "symmetry", "relative_error"],
    "gauge": ["sample", "mean", "stderr", "n"],
}
