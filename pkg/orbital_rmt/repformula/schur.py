"""
Schur pieces of a deformed block-Gaussian matrix and the matrices
A(j, λ, η, t) = X(j) + t Y(j).
"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
import scipy.linalg

from ..exceptions import InvalidArgumentError
from ..types import BlockHamiltonian, hermitian_part, require_hermitian


@dataclass(frozen=True, eq=False)
class SchurData:
    """
    A = P_j H0 P_j*, B = Q_j H P_j*, C = Q_j H Q_j* for one block j.

    A comes from the deformation H0, not from H.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    _spectral: Dict[str, np.ndarray] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.B.shape[1] != n or self.C.shape != (self.B.shape[0],) * 2:
            raise InvalidArgumentError(
                f"Inconsistent Schur pieces: A {self.A.shape}, B {self.B.shape}, C {self.C.shape}"
            )
        object.__setattr__(self, "A", require_hermitian(self.A, "A"))
        object.__setattr__(self, "C", require_hermitian(self.C, "C"))

    @property
    def block_size(self) -> int:
        return self.A.shape[0]

    def rotated(self) -> Tuple[np.ndarray, np.ndarray]:
        """Eigenvalues c of C and B̃ = U* B for C = U diag(c) U*."""
        if "c" not in self._spectral:
            if self.C.shape[0]:
                c, U = scipy.linalg.eigh(self.C)
                self._spectral["c"] = c
                self._spectral["B"] = U.conj().T @ self.B
            else:
                self._spectral["c"] = np.zeros(0)
                self._spectral["B"] = self.B
        return self._spectral["c"], self._spectral["B"]


def schur_pieces(H: BlockHamiltonian, H0: np.ndarray, j: int) -> SchurData:
    """
    Project H and H0 onto block j and its complement.

    Raises:
        InvalidArgumentError: If H0 does not match H or j is out of range
    """
    H0 = np.asarray(H0)
    if H0.shape != H.matrix.shape:
        raise InvalidArgumentError(f"H0 has shape {H0.shape} but H has shape {H.matrix.shape}")
    block = H.block_slice(j)
    inside = np.arange(block.start, block.stop)
    outside = np.setdiff1d(np.arange(H.dim), inside)
    return SchurData(
        A=H0[np.ix_(inside, inside)],
        B=H.matrix[np.ix_(outside, inside)],
        C=H.matrix[np.ix_(outside, outside)],
    )


def xy_matrices(sd: SchurData, energy: float, eta: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Hermitian and anti-Hermitian parts of Z = -λ + A - B*(C - λ - iη)⁻¹B.

    Returns:
        (X, Y) with Z = X + iY and Y negative semi-definite
    """
    if eta <= 0:
        raise InvalidArgumentError(f"eta must be positive, got {eta}")
    c, B = sd.rotated()
    shift = c - energy
    denominator = shift * shift + eta * eta
    X = sd.A - energy * np.eye(sd.block_size) - B.conj().T @ (B * (shift / denominator)[:, None])
    Y = -eta * (B.conj().T @ (B / denominator[:, None]))
    return hermitian_part(X), hermitian_part(Y)


def a_matrix(sd: SchurData, energy: float, eta: float, t: float) -> np.ndarray:
    """
    A(j, λ, η, t) = -λ + A - B*(C - λ + tη)((C - λ)² + η²)⁻¹B.

    Exactly Hermitian, and real when the pieces are real.
    """
    X, Y = xy_matrices(sd, energy, eta)
    return X + float(t) * Y
