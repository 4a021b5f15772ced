"""
Quadrature for the normalized triple average Ave^η_{λ,t,ξ}.

The three measures are dλ/|I| on I, dt/(π(1+t²)) on R and
4ηξ² dξ/(π(ξ²+η²)²) on (0, ∞). The substitutions t = tan θ and
ξ = η tan φ turn the last two into dθ/π on (-π/2, π/2) and
(4/π) sin²φ dφ on (0, π/2); all three use the composite midpoint rule.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Tuple

import numpy as np

from ..constants import ETA_SCHEDULE, LAMBDA_NODES_MIN, LAMBDA_NODES_PER_ETA, T_NODES, XI_NODES
from ..exceptions import InvalidArgumentError
from ..types import Interval

Grid = Tuple[np.ndarray, np.ndarray]


def _midpoints(n: int) -> np.ndarray:
    return (np.arange(n) + 0.5) / n


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Node counts and the η schedule.

    Attributes:
        t_nodes: Midpoints in θ for t = tan θ
        xi_nodes: Midpoints in φ for ξ = η tan φ
        lambda_nodes_min: Lower bound on λ nodes
        lambda_nodes_per_eta: λ nodes per unit of |I|/η
        eta_schedule: Strictly decreasing positive η values
    """

    t_nodes: int = T_NODES
    xi_nodes: int = XI_NODES
    lambda_nodes_min: int = LAMBDA_NODES_MIN
    lambda_nodes_per_eta: float = LAMBDA_NODES_PER_ETA
    eta_schedule: Tuple[float, ...] = field(default=ETA_SCHEDULE)

    def __post_init__(self):
        for name in ("t_nodes", "xi_nodes", "lambda_nodes_min"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if not self.lambda_nodes_per_eta > 0:
            raise InvalidArgumentError(f"lambda_nodes_per_eta must be positive, got {self.lambda_nodes_per_eta}")
        schedule = tuple(float(eta) for eta in self.eta_schedule)
        if not schedule or any(eta <= 0 for eta in schedule):
            raise InvalidArgumentError(f"eta schedule must be nonempty and positive, got {schedule}")
        if any(b >= a for a, b in zip(schedule, schedule[1:])):
            raise InvalidArgumentError(f"eta schedule must be strictly decreasing, got {schedule}")
        object.__setattr__(self, "eta_schedule", schedule)

    def lambda_count(self, interval: Interval, eta: float) -> int:
        return max(self.lambda_nodes_min, math.ceil(self.lambda_nodes_per_eta * interval.length / eta))

    def lambda_grid(self, interval: Interval, eta: float) -> Grid:
        """Midpoints of I and weights summing to 1."""
        n = self.lambda_count(interval, eta)
        return interval.lower + interval.length * _midpoints(n), np.full(n, 1.0 / n)

    def t_grid(self) -> Grid:
        """Nodes t = tan θ and weights 1/n."""
        theta = np.pi * (_midpoints(self.t_nodes) - 0.5)
        return np.tan(theta), np.full(self.t_nodes, 1.0 / self.t_nodes)

    def xi_grid(self, eta: float) -> Grid:
        """Nodes ξ = η tan φ and weights 2 sin²φ / n."""
        phi = 0.5 * np.pi * _midpoints(self.xi_nodes)
        return eta * np.tan(phi), 2.0 * np.sin(phi) ** 2 / self.xi_nodes

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "QuadratureSpec":
        return cls(
            t_nodes=data.get("t_nodes", T_NODES),
            xi_nodes=data.get("xi_nodes", XI_NODES),
            lambda_nodes_min=data.get("lambda_nodes_min", LAMBDA_NODES_MIN),
            lambda_nodes_per_eta=data.get("lambda_nodes_per_eta", LAMBDA_NODES_PER_ETA),
            eta_schedule=tuple(data.get("eta_schedule", ETA_SCHEDULE)),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_nodes": self.t_nodes,
            "xi_nodes": self.xi_nodes,
            "lambda_nodes_min": self.lambda_nodes_min,
            "lambda_nodes_per_eta": self.lambda_nodes_per_eta,
            "eta_schedule": list(self.eta_schedule),
        }


def ave_quadrature(
    integrand: Callable[[np.ndarray, np.ndarray, np.ndarray], Any],
    interval: Interval,
    eta: float,
    quad: QuadratureSpec,
) -> float:
    """
    Approximate Ave^η_{λ,t,ξ} Φ(λ, t, ξ).

    Args:
        integrand: Vectorized Φ; called once with λ, t and ξ shaped for
            broadcasting along the first, second and third axis
        interval: The λ interval I
        eta: Smoothing parameter
        quad: Node counts

    Returns:
        Weighted sum over the product grid
    """
    if eta <= 0:
        raise InvalidArgumentError(f"eta must be positive, got {eta}")
    lam, w_lam = quad.lambda_grid(interval, eta)
    t, w_t = quad.t_grid()
    xi, w_xi = quad.xi_grid(eta)
    values = np.broadcast_to(
        np.asarray(integrand(lam[:, None, None], t[None, :, None], xi[None, None, :]), dtype=np.float64),
        (lam.size, t.size, xi.size),
    )
    return float(np.einsum("i,j,k,ijk->", w_lam, w_t, w_xi, values))
