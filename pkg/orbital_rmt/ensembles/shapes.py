"""
Variance profiles ψ(r) of Gaussian band matrices.

Three families are supported:

- sharp cutoff: ψ(r) = 1/W^d when ||r||_∞ < W, else 0
- scaled profile: ψ(r) = φ(r/W)/W^d for an even nonnegative φ
- lattice Green function kernel: ψ(r) = (-W²Δ + 1)⁻¹(0, r) on Z^d

The Green function is evaluated by trapezoid quadrature of its Fourier
integral, which on a uniform periodic k-grid is a single inverse FFT.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.integrate
import scipy.special

from ..constants import (
    SUSY_MAX_GRID_POINTS,
    SUSY_MIN_POINTS,
    SUSY_MIN_POINTS_PER_W,
    SUSY_TAIL_THRESHOLD,
    SUSY_TOLERANCE,
)
from ..exceptions import AccuracyError, InvalidArgumentError
from ..types import LatticeBox
from ..utils.logging import get_logger

logger = get_logger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]


def _box_profile(rho: np.ndarray) -> np.ndarray:
    return (np.max(np.abs(rho), axis=-1) <= 1.0).astype(np.float64)


def _gaussian_profile(rho: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * np.sum(rho * rho, axis=-1))


# Profiles take displacements with the lattice axis last.
NAMED_PROFILES: Dict[str, Profile] = {
    "box": _box_profile,
    "gaussian": _gaussian_profile,
}


class ShapeKind(Enum):
    SHARP_CUTOFF = "sharpCutoff"
    SCALED_PROFILE = "scaledProfile"
    SUSY_KERNEL = "susyKernel"

    def __str__(self) -> str:
        return self.value


def _grid_points(W: int, start: Optional[int]) -> int:
    target = start if start is not None else max(SUSY_MIN_POINTS_PER_W * W, SUSY_MIN_POINTS)
    return 1 << max(int(target) - 1, 1).bit_length()


def _periodic_green(W: int, d: int, M: int) -> np.ndarray:
    """Trapezoid rule with M nodes per axis: G_M(r) for r on the M^d torus."""
    k = 2.0 * np.pi * np.arange(M) / M
    one_minus_cos = 1.0 - np.cos(k)
    denominator = np.ones((M,) * d)
    for axis in range(d):
        shape = [1] * d
        shape[axis] = M
        denominator = denominator + 2.0 * W * W * one_minus_cos.reshape(shape)
    return np.fft.ifftn(1.0 / denominator).real


def _overlap(table: np.ndarray, half: int) -> np.ndarray:
    """Entries with every |r_i| < half, arranged by r from -half+1 to half-1."""
    idx = np.arange(-half + 1, half)
    return table[np.ix_(*([idx] * table.ndim))]


def _reflect(table: np.ndarray) -> np.ndarray:
    """Table re-indexed by -r mod M."""
    axes = tuple(range(table.ndim))
    return np.roll(np.flip(table), shift=(1,) * table.ndim, axis=axes)


@lru_cache(maxsize=32)
def susy_kernel_table(W: int, d: int, tolerance: float = SUSY_TOLERANCE, start: Optional[int] = None) -> np.ndarray:
    """
    Converged table of G_W on the periodic grid, indexed by r mod M.

    Entries are accurate to tolerance in absolute terms only; far from the
    origin they can sit at round-off level. susy_kernel_value switches to
    the heat-kernel integral there.

    The grid starts at max(64 W, 64) points per axis (rounded up to a power
    of two) and doubles until two successive resolutions agree to tolerance.

    Raises:
        InvalidArgumentError: If W < 1 or d < 1
        AccuracyError: If the grid limit is reached before convergence
    """
    if W < 1 or d < 1:
        raise InvalidArgumentError(f"Green function kernel needs W >= 1 and d >= 1, got W={W}, d={d}")
    M = _grid_points(W, start)
    previous = _periodic_green(W, d, M)
    achieved = math.inf
    while (2 * M) ** d <= SUSY_MAX_GRID_POINTS:
        current = _periodic_green(W, d, 2 * M)
        achieved = float(np.max(np.abs(_overlap(current, M // 2) - _overlap(previous, M // 2))))
        logger.debug(f"Green kernel W={W} d={d}: grid {M} -> {2 * M}, change {achieved:.2e}")
        if achieved < tolerance:
            table = 0.5 * (current + _reflect(current))
            table.setflags(write=False)
            return table
        M *= 2
        previous = current
    raise AccuracyError(
        f"Lattice Green function for W={W}, d={d} did not converge within the grid limit",
        achieved=achieved,
        tolerance=tolerance,
    )


def susy_kernel_value(W: int, d: int, r: Union[int, Sequence[int]], quad: Optional[int] = None) -> float:
    """
    Evaluate G_W(r) = (-W²Δ + 1)⁻¹(0, r) on Z^d.

    Args:
        W: Length scale, >= 1
        d: Lattice dimension
        r: Displacement (int when d = 1)
        quad: Starting number of k-points per axis (default max(64 W, 64))

    Returns:
        Positive kernel value

    Raises:
        InvalidArgumentError: If W < 1, d < 1 or r has the wrong length
        AccuracyError: If the quadrature does not converge
    """
    vector = _as_vector(r, d)
    if W < 1 or d < 1:
        raise InvalidArgumentError(f"Green function kernel needs W >= 1 and d >= 1, got W={W}, d={d}")
    if d == 1:
        return susy_kernel_closed_form_1d(W, vector[0])
    table = susy_kernel_table(int(W), int(d), SUSY_TOLERANCE, quad)
    M = table.shape[0]
    if all(abs(c) < M // 2 for c in vector):
        value = float(table[tuple(c % M for c in vector)])
        if value > SUSY_TAIL_THRESHOLD:
            return value
    return susy_kernel_heat_integral(int(W), vector)


@lru_cache(maxsize=4096)
def _heat_integral(W: int, key: Tuple[int, ...]) -> float:
    scale = 2.0 * W * W

    def integrand(t: float) -> float:
        return math.exp(-t) * float(np.prod(scipy.special.ive(key, scale * t)))

    split = 1.0 + sum(key) / W
    head, _ = scipy.integrate.quad(integrand, 0.0, split, epsabs=0.0, epsrel=1e-10, limit=200)
    tail, _ = scipy.integrate.quad(integrand, split, np.inf, epsabs=0.0, epsrel=1e-10, limit=200)
    return head + tail


def susy_kernel_heat_integral(W: int, r: Sequence[int]) -> float:
    """
    G_W(r) from the lattice heat kernel.

    (1 - W²Δ)⁻¹ = ∫ e^{-t} e^{tW²Δ} dt, and the heat kernel factorizes over
    axes into e^{-2s} I_{r_i}(2s), each of them positive.
    """
    key = tuple(sorted(abs(int(c)) for c in r))
    return _heat_integral(int(W), key)


def susy_kernel_closed_form_1d(W: float, r: int) -> float:
    """
    Closed form of the d = 1 kernel: c q^|r|.

    q is the root below one of q + 1/q = 2 + 1/W², and
    c = 1/(1 + 2W²(1 - q)) normalizes the r = 0 equation.
    """
    if W <= 0:
        return 1.0 if r == 0 else 0.0
    c, q = _closed_form_coefficients(W)
    return c * q ** abs(int(r))


def _closed_form_coefficients(W: float) -> Tuple[float, float]:
    a = 1.0 + 1.0 / (2.0 * W * W)
    q = a - math.sqrt(a * a - 1.0)
    return 1.0 / (1.0 + 2.0 * W * W * (1.0 - q)), q


def _as_vector(r: Union[int, Sequence[int]], d: int) -> Tuple[int, ...]:
    if isinstance(r, (int, np.integer)):
        r = (int(r),)
    vector = tuple(int(c) for c in r)
    if len(vector) != d:
        raise InvalidArgumentError(f"Displacement {vector} does not have dimension {d}")
    return vector


@dataclass(frozen=True)
class ShapeFunction:
    """
    Band-matrix variance profile ψ.

    Attributes:
        kind: Profile family
        W: Bandwidth (the kernel length scale for susyKernel; 0 allowed there)
        d: Lattice dimension
        profile: For scaledProfile, a name from NAMED_PROFILES or a callable
            taking an array whose last axis has length d
    """

    kind: ShapeKind
    W: int
    d: int = 1
    profile: Union[str, Profile, None] = None
    _cache: Dict[Tuple[int, ...], float] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = self.kind if isinstance(self.kind, ShapeKind) else ShapeKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if isinstance(self.d, bool) or int(self.d) != self.d or self.d < 1:
            raise InvalidArgumentError(f"Shape dimension d must be an integer >= 1, got {self.d!r}")
        minimum = 0 if kind is ShapeKind.SUSY_KERNEL else 1
        if isinstance(self.W, bool) or int(self.W) != self.W or self.W < minimum:
            raise InvalidArgumentError(f"{kind} needs an integer W >= {minimum}, got {self.W!r}")
        object.__setattr__(self, "W", int(self.W))
        object.__setattr__(self, "d", int(self.d))
        if kind is ShapeKind.SCALED_PROFILE:
            if self.profile is None:
                raise InvalidArgumentError("scaledProfile needs a profile")
            if isinstance(self.profile, str) and self.profile not in NAMED_PROFILES:
                raise InvalidArgumentError(
                    f"Unknown profile {self.profile!r}; known: {sorted(NAMED_PROFILES)}"
                )
        elif self.profile is not None:
            raise InvalidArgumentError(f"{kind} does not take a profile")

    @classmethod
    def sharp_cutoff(cls, W: int, d: int = 1) -> "ShapeFunction":
        return cls(ShapeKind.SHARP_CUTOFF, W, d)

    @classmethod
    def scaled_profile(cls, profile: Union[str, Profile], W: int, d: int = 1) -> "ShapeFunction":
        return cls(ShapeKind.SCALED_PROFILE, W, d, profile)

    @classmethod
    def susy_kernel(cls, W: int, d: int = 1) -> "ShapeFunction":
        return cls(ShapeKind.SUSY_KERNEL, W, d)

    def evaluate_many(self, displacements: np.ndarray) -> np.ndarray:
        """
        Vectorized ψ over an integer array whose last axis has length d.
        """
        r = np.asarray(displacements, dtype=np.int64)
        if r.shape[-1] != self.d:
            raise InvalidArgumentError(f"Displacements must have last axis {self.d}, got shape {r.shape}")
        scale = float(self.W) ** self.d
        if self.kind is ShapeKind.SHARP_CUTOFF:
            inside = np.max(np.abs(r), axis=-1) < self.W
            return np.where(inside, 1.0 / scale, 0.0)
        if self.kind is ShapeKind.SCALED_PROFILE:
            phi = NAMED_PROFILES[self.profile] if isinstance(self.profile, str) else self.profile
            values = np.asarray(phi(r / float(self.W)), dtype=np.float64)
            return values / scale
        if self.W == 0:
            return np.all(r == 0, axis=-1).astype(np.float64)
        if self.d == 1:
            c, q = _closed_form_coefficients(self.W)
            return c * np.power(q, np.abs(r[..., 0]))
        table = susy_kernel_table(self.W, self.d)
        M = table.shape[0]
        values = table[tuple(np.mod(r[..., axis], M) for axis in range(self.d))].copy()
        far = (np.max(np.abs(r), axis=-1) >= M // 2) | (values <= SUSY_TAIL_THRESHOLD)
        for index in zip(*np.nonzero(far)):
            values[index] = susy_kernel_heat_integral(self.W, r[index])
        return values

    def __call__(self, r: Union[int, Sequence[int]]) -> float:
        vector = _as_vector(r, self.d)
        if vector not in self._cache:
            self._cache[vector] = float(self.evaluate_many(np.array([vector]))[0])
        return self._cache[vector]

    def variance_matrix(self, box: LatticeBox) -> np.ndarray:
        """ψ(x - y) for all pairs of sites of the box, in index order."""
        if box.d != self.d:
            raise InvalidArgumentError(f"Shape has d={self.d} but box has d={box.d}")
        coords = box.coordinates()
        return self.evaluate_many(coords[:, None, :] - coords[None, :, :])

    def is_symmetric(self, radius: int) -> bool:
        """Check ψ(-r) == ψ(r) on the box ||r||_∞ <= radius."""
        r = LatticeBox(self.d, radius).coordinates()
        return bool(np.array_equal(self.evaluate_many(r), self.evaluate_many(-r)))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ShapeFunction":
        return cls(ShapeKind(data["kind"]), data["W"], data.get("d", 1), data.get("profile"))

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"kind": self.kind.value, "W": self.W, "d": self.d}
        if self.kind is ShapeKind.SCALED_PROFILE:
            if not isinstance(self.profile, str):
                raise InvalidArgumentError("Only named profiles can be serialized")
            result["profile"] = self.profile
        return result


def eval_shape(shape: ShapeFunction, r: Union[int, Sequence[int]]) -> float:
    """
    Evaluate ψ(r).

    Args:
        shape: Variance profile
        r: Lattice displacement (int when d = 1)

    Returns:
        Nonnegative value, symmetric under r -> -r
    """
    return shape(r)
