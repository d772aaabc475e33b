import numpy as np

from ..qmat.base import (
    SIGMA12,
    SIGMA_Z12,
    RealSym3,
    commutator_dense,
    tangent_gain_dense,
)
from .base import Observer12State
from .gains import Gains12

_S12 = SIGMA12.to_dense()
_SZ12 = SIGMA_Z12.to_dense()


def obs12_rhs_dense(
    rho_hat: np.ndarray,
    omega12_hat: float,
    y_meas: float,
    epsilon: float,
    gamma_big: float,
    gamma_small: float,
) -> tuple[np.ndarray, float]:
    drift = commutator_dense(_S12, rho_hat)
    inn = y_meas - rho_hat[0, 0]
    d_rho_hat = omega12_hat * drift + epsilon * gamma_big * inn * tangent_gain_dense(
        _SZ12, rho_hat
    )
    d_omega = epsilon**2 * gamma_small * float(np.sum(_SZ12 * drift)) * inn
    return d_rho_hat, d_omega


def obs12_rhs(
    s: Observer12State, y_meas: float, g: Gains12
) -> tuple[RealSym3, float]:
    """Right-hand side of the phase-1 observer of (ρ̂, Ω̂12) driven by ``y_meas``."""
    d_rho_hat, d_omega = obs12_rhs_dense(
        s.rho_hat.to_dense(),
        s.omega12_hat,
        y_meas,
        g.epsilon,
        g.gamma_big,
        g.gamma_small,
    )
    return RealSym3.from_dense(d_rho_hat), d_omega
