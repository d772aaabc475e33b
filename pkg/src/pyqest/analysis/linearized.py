import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import ValidationError
from ..observers.gains import Gains12
from ..qmat.base import P1, SIGMA_X12
from .averaging import averaged_obs12_rhs_dense

_SX12 = SIGMA_X12.to_dense()
_P1 = P1.to_dense()


@dataclass(frozen=True)
class LinearizedParams:
    """Equilibrium population ``a`` = Tr(P1 ξ) and the phase-1 gains.

    Coordinates of the linearization are x̃ = Tr(σx^{12} ξ̂), z̃ = Tr(P1 ξ̂) − a and Ω̃12.
    """

    a: float = 0.5
    epsilon: float = 1.0 / 3.0
    gamma_big: float = 4.0
    gamma_small: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValidationError(f"a must lie in (0, 1), got {self.a!r}.")
        for name in ("epsilon", "gamma_big", "gamma_small"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValidationError(f"{name} must be > 0, got {value!r}.")

    @classmethod
    def from_gains(cls, g: Gains12, a: float = 0.5) -> "LinearizedParams":
        return cls(
            a=a, epsilon=g.epsilon, gamma_big=g.gamma_big, gamma_small=g.gamma_small
        )

    def gains(self) -> Gains12:
        return Gains12(
            gamma_big=self.gamma_big,
            gamma_small=self.gamma_small,
            epsilon=self.epsilon,
        )


def linearized12(p: LinearizedParams) -> np.ndarray:
    """Linearized averaged phase-1 error dynamics in (x̃, z̃, Ω̃12)."""
    ea = p.epsilon * p.a
    return np.array(
        [
            [-ea * p.gamma_big / 2.0, 0.0, -2.0 * ea],
            [0.0, -ea * (1.0 - p.a) * p.gamma_big / 2.0, 0.0],
            [ea * p.gamma_small / 2.0, 0.0, 0.0],
        ]
    )


def linearized12_spectrum(p: LinearizedParams) -> np.ndarray:
    """Eigenvalues of ``linearized12`` in closed form: the z̃ rate, then the (x̃, Ω̃) pair.

    Exact at repeated roots, where a numerical eigensolver loses about half the digits.
    """
    ea = p.epsilon * p.a
    c = ea * p.gamma_big / 2.0
    root = cmath.sqrt(ea**2 * (p.gamma_big**2 / 4.0 - 4.0 * p.gamma_small))
    return np.array(
        [
            complex(-ea * (1.0 - p.a) * p.gamma_big / 2.0),
            (-c + root) / 2.0,
            (-c - root) / 2.0,
        ]
    )


def linearized12_time_constant(p: LinearizedParams) -> float:
    """1 / (slowest decay rate) of the linearized error."""
    return 1.0 / float(np.min(np.abs(linearized12_spectrum(p).real)))


def _chart(a: float, x_hat: float, z_hat: float) -> np.ndarray:
    """Pure ξ̂ with Tr(σx^{12} ξ̂) = x_hat and Tr(P1 ξ̂) = z_hat near ξ = (√a, 0, √(1−a))."""
    v1 = math.sqrt(z_hat)
    v2 = x_hat / (2.0 * v1)
    v = np.array([v1, v2, math.sqrt(1.0 - z_hat - v2**2)])
    return np.outer(v, v)


def averaged12_jacobian(p: LinearizedParams, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of the averaged phase-1 system at its equilibrium."""
    xi = _chart(p.a, 0.0, p.a)

    def field(c: np.ndarray) -> np.ndarray:
        xi_hat = _chart(p.a, c[0], p.a + c[1])
        d_xi_hat, d_omega = averaged_obs12_rhs_dense(
            xi_hat, c[2], xi, p.epsilon, p.gamma_big, p.gamma_small
        )
        return np.array(
            [float(np.sum(_SX12 * d_xi_hat)), float(np.sum(_P1 * d_xi_hat)), d_omega]
        )

    jac = np.empty((3, 3))
    for j in range(3):
        step = np.zeros(3)
        step[j] = h
        jac[:, j] = (field(step) - field(-step)) / (2.0 * h)
    return jac
