"""
The Poisson-kernel identity in t and the two forms of the ξ average.
"""

from typing import Tuple

import numpy as np
import scipy.integrate
import scipy.linalg

from ..constants import NEGATIVE_SEMIDEFINITE_TOL, POISSON_QUAD_LIMIT, POISSON_TOLERANCE
from ..exceptions import AccuracyError, InvalidArgumentError
from ..types import require_hermitian
from .quadrature import QuadratureSpec


def _crossing_angles(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """θ = arctan t for the real t where X + tY is singular."""
    if not np.any(Y):
        return np.zeros(0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = scipy.linalg.eigvals(X, -Y)
    finite = np.isfinite(t) & (np.abs(t.imag) <= 1e-8 * np.maximum(1.0, np.abs(t.real)))
    theta = np.unique(np.arctan(t[finite].real))
    # Roots at t = ±inf sit on the endpoints.
    return theta[np.abs(theta) < 0.5 * np.pi - 1e-9]


def poisson_identity_check(X: np.ndarray, Y: np.ndarray, eta: float) -> Tuple[float, float]:
    """
    Both sides of Im tr(X + iY - iη)⁻¹ = ∫ dt/(π(1+t²)) Im tr(X + tY - iη)⁻¹.

    The right side is integrated adaptively in θ = arctan t, with
    breakpoints where an eigenvalue of X + tY crosses zero.

    Args:
        X: Hermitian matrix
        Y: Negative semi-definite Hermitian matrix
        eta: Positive smoothing parameter

    Returns:
        (lhs, rhs)

    Raises:
        InvalidArgumentError: If Y has an eigenvalue above 1e-10
        AccuracyError: If the adaptive integration misses its tolerance
    """
    if eta <= 0:
        raise InvalidArgumentError(f"eta must be positive, got {eta}")
    X = require_hermitian(X, "X")
    Y = require_hermitian(Y, "Y")
    if X.shape != Y.shape:
        raise InvalidArgumentError(f"X and Y differ in shape: {X.shape} vs {Y.shape}")
    top = float(scipy.linalg.eigvalsh(Y)[-1]) if Y.size else 0.0
    if top > NEGATIVE_SEMIDEFINITE_TOL:
        raise InvalidArgumentError(f"Y must be negative semi-definite; largest eigenvalue is {top:.3e}")

    n = X.shape[0]
    lhs = float(np.trace(np.linalg.inv(X + 1j * Y - 1j * eta * np.eye(n))).imag)

    def integrand(theta: float) -> float:
        mu = scipy.linalg.eigvalsh(X + np.tan(theta) * Y)
        return float(np.sum(eta / (mu * mu + eta * eta))) / np.pi

    points = _crossing_angles(X, Y)
    rhs, error = scipy.integrate.quad(
        integrand,
        -np.pi / 2,
        np.pi / 2,
        points=points if points.size else None,
        limit=POISSON_QUAD_LIMIT,
        epsabs=POISSON_TOLERANCE,
        epsrel=POISSON_TOLERANCE,
    )
    if error > 1e-7:
        raise AccuracyError("Poisson integral did not converge", achieved=error, tolerance=1e-7)
    return lhs, float(rhs)


def stieltjes_xi_average(eigenvalues: np.ndarray, eta: float) -> np.ndarray:
    """
    The ξ average of N(M, (-ξ, ξ))/(2ξ) in closed form: (1/π) Σ_μ η/(μ² + η²).

    This is the Stieltjes form ∫ η/(ξ²+η²) dN. The last axis holds the
    eigenvalues; leading axes are kept.
    """
    mu = np.asarray(eigenvalues, dtype=np.float64)
    return np.sum(eta / (mu * mu + eta * eta), axis=-1) / np.pi


def density_xi_average(eigenvalues: np.ndarray, eta: float, quad: QuadratureSpec) -> np.ndarray:
    """
    The same ξ average by quadrature of ∫ N(M, (-ξ, ξ)) 2ηξ/(π(ξ²+η²)²) dξ.

    Counts at all ξ nodes come from the sorted |μ|, so no further
    eigensolves are needed. Leading axes of eigenvalues are kept.
    """
    mu = np.sort(np.abs(np.asarray(eigenvalues, dtype=np.float64)), axis=-1)
    xi, weights = quad.xi_grid(eta)
    flat = mu.reshape(-1, mu.shape[-1])
    counts = np.stack([np.searchsorted(row, xi, side="left") for row in flat])
    result = counts @ (weights / (2.0 * xi))
    return result.reshape(mu.shape[:-1])
