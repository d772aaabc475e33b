import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from .base import Matrix3, RealSym3


def rot12_dense(theta: float) -> np.ndarray:
    """P3 + cosθ(P1+P2) + sinθ σ^{12} as a dense array."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class Rotation12:
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValidationError(f"rotation angle must be finite, got {self.theta}.")

    @property
    def matrix(self) -> np.ndarray:
        return rot12_dense(self.theta)

    def inverse(self) -> "Rotation12":
        return Rotation12(-self.theta)

    def compose(self, other: "Rotation12") -> "Rotation12":
        return Rotation12(self.theta + other.theta)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def conjugate(self, m: Matrix3) -> Matrix3:
        """U M Uᵀ, same symmetry class as ``m``."""
        u = self.matrix
        return type(m).from_dense(u @ m.to_dense() @ u.T)

    def conjugate_transpose(self, m: Matrix3) -> Matrix3:
        """Uᵀ M U, the change to the frame rotating with θ."""
        u = self.matrix
        return type(m).from_dense(u.T @ m.to_dense() @ u)


def rot12(theta: float) -> Rotation12:
    return Rotation12(float(theta))


def to_rotating_frame(rho: RealSym3, theta: float) -> RealSym3:
    """ξ = Uᵀ(θ) ρ U(θ) with U(θ) = exp(θσ^{12})."""
    return rot12(theta).conjugate_transpose(rho)


def from_rotating_frame(xi: RealSym3, theta: float) -> RealSym3:
    return rot12(theta).conjugate(xi)


def relabel_levels(m: Matrix3, perm: tuple[int, int, int]) -> Matrix3:
    """Conjugation sending level ``perm[i]`` to level ``i + 1``.

    ``perm=(2, 3, 1)`` maps σ^{23} to σ^{12}, σz^{23} to σz^{12} and P2 to P1.
    """
    if sorted(perm) != [1, 2, 3]:
        raise ValidationError(f"perm must be a permutation of (1, 2, 3), got {perm}.")
    q = np.zeros((3, 3))
    for i, level in enumerate(perm):
        q[i, level - 1] = 1.0
    return type(m).from_dense(q @ m.to_dense() @ q.T)

