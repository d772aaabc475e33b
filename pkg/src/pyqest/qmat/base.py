"""Real 3×3 symmetric and antisymmetric operators of the three-level model.

Symmetric matrices are stored as their upper triangle ``(m11, m22, m33, m12, m13,
m23)`` and antisymmetric ones as their strict upper triangle ``(m12, m13, m23)``,
so the symmetry class is carried by the type. Dense 3×3 arrays only appear
inside products.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..exceptions import IndexOutOfRange, InvalidPair, ValidationError

_SYM_ROWS = np.array([0, 1, 2, 0, 0, 1])
_SYM_COLS = np.array([0, 1, 2, 1, 2, 2])
_SKEW_ROWS = np.array([0, 0, 1])
_SKEW_COLS = np.array([1, 2, 2])


def _frozen_entries(entries, size: int, kind: str) -> np.ndarray:
    arr = np.array(entries, dtype=float).reshape(-1)
    if arr.shape != (size,):
        raise ValidationError(f"{kind} needs {size} entries, got {arr.shape[0]}.")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{kind} entries must be finite: {arr}.")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RealSym3:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "entries", _frozen_entries(self.entries, 6, "RealSym3")
        )

    @classmethod
    def from_dense(cls, m: np.ndarray) -> "RealSym3":
        m = np.asarray(m, dtype=float)
        return cls(m[_SYM_ROWS, _SYM_COLS])

    @classmethod
    def zeros(cls) -> "RealSym3":
        return cls(np.zeros(6))

    def to_dense(self) -> np.ndarray:
        m = np.empty((3, 3))
        m[_SYM_ROWS, _SYM_COLS] = self.entries
        m[_SYM_COLS, _SYM_ROWS] = self.entries
        return m

    def trace(self) -> float:
        return float(self.entries[:3].sum())

    def norm(self) -> float:
        return float(np.linalg.norm(self.to_dense()))

    def allclose(self, other: "RealSym3", atol: float = 1e-12) -> bool:
        return isinstance(other, RealSym3) and bool(
            np.allclose(self.entries, other.entries, rtol=0.0, atol=atol)
        )

    def __add__(self, other: "RealSym3") -> "RealSym3":
        return RealSym3(self.entries + other.entries)

    def __sub__(self, other: "RealSym3") -> "RealSym3":
        return RealSym3(self.entries - other.entries)

    def __neg__(self) -> "RealSym3":
        return RealSym3(-self.entries)

    def __mul__(self, scalar: float) -> "RealSym3":
        return RealSym3(self.entries * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"RealSym3({np.array2string(self.entries, precision=6)})"


@dataclass(frozen=True, eq=False)
class RealSkew3:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "entries", _frozen_entries(self.entries, 3, "RealSkew3")
        )

    @classmethod
    def from_dense(cls, m: np.ndarray) -> "RealSkew3":
        m = np.asarray(m, dtype=float)
        return cls(m[_SKEW_ROWS, _SKEW_COLS])

    def to_dense(self) -> np.ndarray:
        m = np.zeros((3, 3))
        m[_SKEW_ROWS, _SKEW_COLS] = self.entries
        m[_SKEW_COLS, _SKEW_ROWS] = -self.entries
        return m

    def trace(self) -> float:
        return 0.0

    def allclose(self, other: "RealSkew3", atol: float = 1e-12) -> bool:
        return isinstance(other, RealSkew3) and bool(
            np.allclose(self.entries, other.entries, rtol=0.0, atol=atol)
        )

    def __add__(self, other: "RealSkew3") -> "RealSkew3":
        return RealSkew3(self.entries + other.entries)

    def __sub__(self, other: "RealSkew3") -> "RealSkew3":
        return RealSkew3(self.entries - other.entries)

    def __neg__(self) -> "RealSkew3":
        return RealSkew3(-self.entries)

    def __mul__(self, scalar: float) -> "RealSkew3":
        return RealSkew3(self.entries * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"RealSkew3({np.array2string(self.entries, precision=6)})"


Matrix3 = RealSym3 | RealSkew3


class OperatorKind(str, Enum):
    SIGMA = "sigma"
    SIGMA_X = "sigma_x"
    SIGMA_Z = "sigma_z"
    PROJ = "proj"


def _ket_bra(l: int, k: int) -> np.ndarray:
    m = np.zeros((3, 3))
    m[l - 1, k - 1] = 1.0
    return m


def _check_index(name: str, value: int) -> int:
    if isinstance(value, bool) or value not in (1, 2, 3):
        raise IndexOutOfRange(f"{name} must be one of 1, 2, 3, got {value!r}.")
    return int(value)


def build_operator(kind: OperatorKind | str, l: int, k: int | None = None) -> Matrix3:
    """Exact operator of the model: σ^{lk}, σx^{lk}, σz^{lk} or P_l."""
    kind = OperatorKind(kind)
    l = _check_index("l", l)

    if kind == OperatorKind.PROJ:
        return RealSym3.from_dense(_ket_bra(l, l))

    if k is None:
        raise InvalidPair(f"{kind.value} needs a second index.")
    k = _check_index("k", k)
    if l == k:
        raise InvalidPair(f"{kind.value} needs l != k, got l = k = {l}.")

    if kind == OperatorKind.SIGMA:
        return RealSkew3.from_dense(_ket_bra(l, k) - _ket_bra(k, l))
    if kind == OperatorKind.SIGMA_X:
        return RealSym3.from_dense(_ket_bra(l, k) + _ket_bra(k, l))
    return RealSym3.from_dense(_ket_bra(l, l) - _ket_bra(k, k))


def commutator(a: Matrix3, b: Matrix3) -> Matrix3:
    """ab − ba; mixed symmetry classes give a symmetric result, equal ones a skew one."""
    da, db = a.to_dense(), b.to_dense()
    c = da @ db - db @ da
    if isinstance(a, RealSym3) == isinstance(b, RealSym3):
        return RealSkew3.from_dense(c)
    return RealSym3.from_dense(c)


def anticommutator(a: RealSym3, b: RealSym3) -> RealSym3:
    da, db = a.to_dense(), b.to_dense()
    return RealSym3.from_dense(da @ db + db @ da)


def trace_prod(a: Matrix3, b: Matrix3) -> float:
    return float(np.sum(a.to_dense() * b.to_dense().T))


def tangent_gain(m: RealSym3, rho: RealSym3) -> RealSym3:
    """Mρ + ρM − 2Tr(Mρ)ρ, the correction direction tangent to the projectors."""
    return anticommutator(m, rho) - rho * (2.0 * trace_prod(m, rho))


# Dense kernels used by the integrators. For a symmetric ρ and antisymmetric σ,
# [σ, ρ] = σρ + (σρ)ᵀ; for symmetric M, Mρ + ρM = Mρ + (Mρ)ᵀ.


def commutator_dense(sigma: np.ndarray, rho: np.ndarray) -> np.ndarray:
    m = sigma @ rho
    return m + m.T


def tangent_gain_dense(m: np.ndarray, rho: np.ndarray) -> np.ndarray:
    mr = m @ rho
    return mr + mr.T - 2.0 * np.trace(mr) * rho


SIGMA12 = build_operator(OperatorKind.SIGMA, 1, 2)
SIGMA13 = build_operator(OperatorKind.SIGMA, 1, 3)
SIGMA23 = build_operator(OperatorKind.SIGMA, 2, 3)
SIGMA_X12 = build_operator(OperatorKind.SIGMA_X, 1, 2)
SIGMA_X23 = build_operator(OperatorKind.SIGMA_X, 2, 3)
SIGMA_Z12 = build_operator(OperatorKind.SIGMA_Z, 1, 2)
SIGMA_Z23 = build_operator(OperatorKind.SIGMA_Z, 2, 3)
P1 = build_operator(OperatorKind.PROJ, 1)
P2 = build_operator(OperatorKind.PROJ, 2)
P3 = build_operator(OperatorKind.PROJ, 3)
