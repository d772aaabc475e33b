import math

import numpy as np

from ..qmat.base import (
    SIGMA12,
    SIGMA23,
    SIGMA_Z23,
    RealSkew3,
    RealSym3,
    commutator_dense,
    tangent_gain_dense,
)
from ..qmat.rotation import rot12
from .base import Observer23State
from .gains import Gains23

_S12 = SIGMA12.to_dense()
_S23 = SIGMA23.to_dense()


def demodulation_factor(theta: float) -> float:
    return 1.0 - 2.0 * math.cos(2.0 * theta)


def frame_ops_dense(theta: float) -> tuple[np.ndarray, np.ndarray]:
    # Σ^{23} = sinθ σ^{13} + cosθ σ^{23}, Σz^{23} = (sinθ, cosθ, 0)(sinθ, cosθ, 0)ᵀ − P3
    c, s = math.cos(theta), math.sin(theta)
    big_sigma = np.array([[0.0, 0.0, s], [0.0, 0.0, c], [-s, -c, 0.0]])
    big_sigma_z = np.array(
        [[s * s, s * c, 0.0], [s * c, c * c, 0.0], [0.0, 0.0, -1.0]]
    )
    return big_sigma, big_sigma_z


def frame_ops(theta: float) -> tuple[RealSkew3, RealSym3]:
    """Σ^{23} = U σ^{23} Uᵀ and Σz^{23} = U σz^{23} Uᵀ with U = exp(θσ^{12})."""
    u = rot12(theta)
    return u.conjugate(SIGMA23), u.conjugate(SIGMA_Z23)


def obs23_rhs_dense(
    rho_hat: np.ndarray,
    omega23_hat: float,
    y_meas: float,
    theta: float,
    epsilon: float,
    eta: float,
    gamma_big: float,
    gamma_small: float,
    omega12_known: float,
) -> tuple[np.ndarray, float]:
    big_sigma, big_sigma_z = frame_ops_dense(theta)
    weighted = (y_meas - rho_hat[0, 0]) * demodulation_factor(theta)
    d_rho_hat = (
        omega12_known * commutator_dense(_S12, rho_hat)
        + eta * math.cos(theta) * omega23_hat * commutator_dense(_S23, rho_hat)
        + epsilon
        * eta
        * gamma_big
        * weighted
        * tangent_gain_dense(big_sigma_z, rho_hat)
    )
    d_omega = (
        epsilon**2
        * eta
        * gamma_small
        * weighted
        * float(np.sum(big_sigma_z * commutator_dense(big_sigma, rho_hat)))
    )
    return d_rho_hat, d_omega


def obs23_rhs(
    s: Observer23State, y_meas: float, theta: float, g: Gains23
) -> tuple[RealSym3, float]:
    """Right-hand side of the phase-2 observer of (ρ̂, Ω̂23)."""
    d_rho_hat, d_omega = obs23_rhs_dense(
        s.rho_hat.to_dense(),
        s.omega23_hat,
        y_meas,
        theta,
        g.epsilon,
        g.eta,
        g.gamma_big,
        g.gamma_small,
        g.require_omega12(),
    )
    return RealSym3.from_dense(d_rho_hat), d_omega
