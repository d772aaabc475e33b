import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import DegenerateState, ValidationError
from .base import RealSym3

TRACE_TOL = 1e-9
IDEMPOTENCY_TOL = 1e-8
PSD_TOL = 1e-9
TOL_DEGENERATE = 1e-6


def purity_defect_dense(m: np.ndarray) -> float:
    return float(np.linalg.norm(m @ m - m))


@dataclass(frozen=True, eq=False)
class PureState:
    """Rank-one real projector, a point of the real projective plane."""

    matrix: RealSym3

    def __post_init__(self):
        if not isinstance(self.matrix, RealSym3):
            object.__setattr__(self, "matrix", RealSym3.from_dense(self.matrix))
        m = self.matrix.to_dense()
        trace = np.trace(m)
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValidationError(f"pure state needs unit trace, got {trace!r}.")
        defect = purity_defect_dense(m)
        if defect > IDEMPOTENCY_TOL:
            raise ValidationError(f"pure state must be idempotent, defect {defect:.3e}.")
        if np.linalg.eigvalsh(m)[0] < -PSD_TOL:
            raise ValidationError("pure state must be positive semidefinite.")

    @classmethod
    def from_amplitudes(cls, v) -> "PureState":
        v = np.asarray(v, dtype=float).reshape(3)
        norm = np.linalg.norm(v)
        if not np.isfinite(norm) or norm == 0.0:
            raise ValidationError(f"amplitudes must be finite and nonzero, got {v}.")
        v = v / norm
        return cls(RealSym3.from_dense(np.outer(v, v)))

    @classmethod
    def basis(cls, k: int) -> "PureState":
        v = np.zeros(3)
        v[k - 1] = 1.0
        return cls.from_amplitudes(v)

    def to_dense(self) -> np.ndarray:
        return self.matrix.to_dense()

    @property
    def entries(self) -> np.ndarray:
        return self.matrix.entries

    @property
    def purity_defect(self) -> float:
        return purity_defect_dense(self.to_dense())

    def population(self, k: int) -> float:
        return float(self.matrix.entries[k - 1])

    def amplitudes(self) -> np.ndarray:
        return dominant_eigen(self.to_dense())[1]


def fidelity(a: PureState, b: PureState) -> float:
    return float(np.sum(a.to_dense() * b.to_dense()))


def symmetric_eigenvalues(m: np.ndarray) -> np.ndarray:
    """Closed-form eigenvalues of a symmetric 3×3 matrix, in descending order."""
    m = np.asarray(m, dtype=float)
    p1 = m[0, 1] ** 2 + m[0, 2] ** 2 + m[1, 2] ** 2
    if p1 == 0.0:
        return np.sort(np.diag(m))[::-1].copy()

    q = np.trace(m) / 3.0
    p2 = np.sum((np.diag(m) - q) ** 2) + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (m - q * np.eye(3)) / p
    r = np.linalg.det(b) / 2.0
    # r leaves [-1, 1] only through rounding
    if r <= -1.0:
        phi = math.pi / 3.0
    elif r >= 1.0:
        phi = 0.0
    else:
        phi = math.acos(r) / 3.0
    eig1 = q + 2.0 * p * math.cos(phi)
    eig3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    eig2 = 3.0 * q - eig1 - eig3
    return np.array([eig1, eig2, eig3])


def dominant_eigen(m: np.ndarray, refine: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and the unit eigenvector of the largest one.

    The eigenvector is the widest cross product of two rows of ``m − λ1 I``,
    polished by shifted power iteration.
    """
    m = np.asarray(m, dtype=float)
    eigvals = symmetric_eigenvalues(m)
    shifted = m - eigvals[0] * np.eye(3)
    candidates = [
        np.cross(shifted[0], shifted[1]),
        np.cross(shifted[0], shifted[2]),
        np.cross(shifted[1], shifted[2]),
    ]
    v = max(candidates, key=np.linalg.norm)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        # rank of m − λ1 I below two: fall back to the largest column of m − λ3 I
        columns = m - eigvals[2] * np.eye(3)
        v = columns[:, int(np.argmax(np.linalg.norm(columns, axis=0)))]
        norm = np.linalg.norm(v)
    if norm == 0.0:
        # m is a multiple of I, every vector is an eigenvector
        v, norm = np.array([1.0, 0.0, 0.0]), 1.0
    v = v / norm

    positive = m - eigvals[2] * np.eye(3)
    for _ in range(refine):
        w = positive @ v
        w_norm = np.linalg.norm(w)
        if w_norm == 0.0:
            break
        v = w / w_norm

    # fix the sign so that the largest-magnitude entry is positive
    if v[int(np.argmax(np.abs(v)))] < 0:
        v = -v
    return eigvals, v


def nearest_projector(
    m: RealSym3 | np.ndarray, tol_degenerate: float = TOL_DEGENERATE
) -> PureState:
    """Projector vvᵀ on the dominant eigenvector of ``m``."""
    dense = m.to_dense() if isinstance(m, RealSym3) else np.asarray(m, dtype=float)
    dense = 0.5 * (dense + dense.T)
    eigvals = symmetric_eigenvalues(dense)
    gap = eigvals[0] - eigvals[1]
    if gap <= tol_degenerate:
        raise DegenerateState(
            f"top eigenvalues {eigvals[0]:.12g} and {eigvals[1]:.12g} differ by "
            f"{gap:.3e} <= {tol_degenerate:.1e}."
        )
    _, v = dominant_eigen(dense)
    return PureState(RealSym3.from_dense(np.outer(v, v)))
