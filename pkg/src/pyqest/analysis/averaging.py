import math

import numpy as np

from ..exceptions import ValidationError
from ..observers.gains import Gains12, Gains23
from ..observers.obs12 import obs12_rhs_dense
from ..plant.dynamics import output_dense, plant_rhs_dense
from ..qmat.base import (
    P1,
    P2,
    SIGMA12,
    SIGMA23,
    SIGMA_X12,
    SIGMA_Z12,
    SIGMA_Z23,
    RealSym3,
    commutator_dense,
    tangent_gain_dense,
)
from ..qmat.projector import PureState
from ..qmat.rotation import relabel_levels, rot12_dense
from ..sim.integrator import rk4_step, steps_covering

_S12 = SIGMA12.to_dense()
_S23 = SIGMA23.to_dense()
_SX12 = SIGMA_X12.to_dense()
_SZ12 = SIGMA_Z12.to_dense()
_SZ23 = SIGMA_Z23.to_dense()
_P1 = P1.to_dense()
_P2 = P2.to_dense()

CYCLIC_PERM = (2, 3, 1)


def _tr(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(a * b.T))


def averaged_obs12_rhs_dense(
    xi_hat: np.ndarray,
    omega_tilde: float,
    xi: np.ndarray,
    epsilon: float,
    gamma_big: float,
    gamma_small: float,
) -> tuple[np.ndarray, float]:
    err = xi - xi_hat
    z_err, x_err = _tr(_SZ12, err), _tr(_SX12, err)
    d_xi_hat = epsilon * omega_tilde * commutator_dense(_S12, xi_hat) + (
        epsilon * gamma_big / 4.0
    ) * (
        z_err * tangent_gain_dense(_SZ12, xi_hat)
        + x_err * tangent_gain_dense(_SX12, xi_hat)
    )
    d_omega_tilde = (epsilon * gamma_small / 2.0) * (
        -_tr(_SZ12, xi_hat) * x_err + _tr(_SX12, xi_hat) * z_err
    )
    return d_xi_hat, d_omega_tilde


def averaged_obs12_rhs(
    xi_hat: PureState, omega_tilde: float, xi: PureState, g: Gains12
) -> tuple[RealSym3, float]:
    """Period average of the phase-1 observer written in the frame rotating with Ω12 t.

    ``omega_tilde`` is the scaled estimation error (Ω̂12 − Ω12)/ε.
    """
    d_xi_hat, d_omega_tilde = averaged_obs12_rhs_dense(
        xi_hat.to_dense(),
        omega_tilde,
        xi.to_dense(),
        g.epsilon,
        g.gamma_big,
        g.gamma_small,
    )
    return RealSym3.from_dense(d_xi_hat), d_omega_tilde


def averaged_obs23_rhs_dense(
    xi_hat: np.ndarray,
    omega23_hat: float,
    xi: np.ndarray,
    omega23: float,
    epsilon: float,
    eta: float,
    gamma_big: float,
    gamma_small: float,
) -> tuple[np.ndarray, np.ndarray, float]:
    inn = _tr(_P2, xi - xi_hat)
    d_xi = 0.5 * eta * omega23 * commutator_dense(_S23, xi)
    d_xi_hat = 0.5 * eta * omega23_hat * commutator_dense(
        _S23, xi_hat
    ) + epsilon * eta * gamma_big * inn * tangent_gain_dense(_SZ23, xi_hat)
    d_omega23_hat = (
        epsilon**2
        * eta
        * gamma_small
        * inn
        * _tr(_SZ23, commutator_dense(_S23, xi_hat))
    )
    return d_xi, d_xi_hat, d_omega23_hat


def averaged_obs23_rhs(
    xi_hat: PureState,
    omega23_hat: float,
    xi: PureState,
    omega23: float,
    g23: Gains23,
) -> tuple[RealSym3, RealSym3, float]:
    """Phase-2 plant and observer in the rotating frame once the fast terms are dropped.

    The demodulated innovation averages to Tr(P2(ξ − ξ̂)).
    """
    d_xi, d_xi_hat, d_omega23_hat = averaged_obs23_rhs_dense(
        xi_hat.to_dense(),
        omega23_hat,
        xi.to_dense(),
        omega23,
        g23.epsilon,
        g23.eta,
        g23.gamma_big,
        g23.gamma_small,
    )
    return RealSym3.from_dense(d_xi), RealSym3.from_dense(d_xi_hat), d_omega23_hat


def permuted_equivalence(
    xi_hat: PureState,
    omega23_hat: float,
    xi: PureState,
    omega23: float,
    g23: Gains23,
) -> float:
    """Largest mismatch between the averaged phase-2 system and the phase-1 observer.

    The phase-2 side is slowed by η and relabelled with levels (2, 3, 1) → (1, 2, 3);
    the phase-1 side runs with Ω12 = Ω23/2, Γ12 = Γ23, γ12 = γ23/2 and y = Tr(P1 ξ).
    """
    if g23.eta == 0.0:
        raise ValidationError("permuted_equivalence needs eta > 0.")
    d_xi, d_xi_hat, d_omega = averaged_obs23_rhs(xi_hat, omega23_hat, xi, omega23, g23)

    def relabel(m: RealSym3) -> np.ndarray:
        return relabel_levels(m, CYCLIC_PERM).to_dense()

    xi_p, xi_hat_p = relabel(xi.matrix), relabel(xi_hat.matrix)
    ref_xi = plant_rhs_dense(xi_p, 1.0, 0.0, omega23 / 2.0, 0.0)
    ref_xi_hat, ref_omega = obs12_rhs_dense(
        xi_hat_p,
        omega23_hat / 2.0,
        output_dense(xi_p),
        g23.epsilon,
        g23.gamma_big,
        g23.gamma_small / 2.0,
    )
    return max(
        float(np.max(np.abs(relabel(d_xi) / g23.eta - ref_xi))),
        float(np.max(np.abs(relabel(d_xi_hat) / g23.eta - ref_xi_hat))),
        abs(d_omega / (2.0 * g23.eta) - ref_omega),
    )


def _full_vs_averaged_gap(
    omega12: float,
    g: Gains12,
    xi: np.ndarray,
    xi_hat0: np.ndarray,
    omega_tilde0: float,
    dt: float,
) -> float:
    """Sup over one period 2π/Ω12 of ‖ξ̂_full − ξ̂_avg‖_F + |Ω̃_full − Ω̃_avg|."""
    n, h = steps_covering(2.0 * math.pi / abs(omega12), dt)
    eps = g.epsilon

    def full(t: float, x: np.ndarray) -> np.ndarray:
        rho = x[:9].reshape(3, 3)
        rho_hat = x[9:18].reshape(3, 3)
        d_rho_hat, d_omega = obs12_rhs_dense(
            rho_hat, x[18], output_dense(rho), eps, g.gamma_big, g.gamma_small
        )
        return np.concatenate(
            [
                plant_rhs_dense(rho, 1.0, 0.0, omega12, 0.0).ravel(),
                d_rho_hat.ravel(),
                [d_omega],
            ]
        )

    def averaged(t: float, x: np.ndarray) -> np.ndarray:
        d_xi_hat, d_omega_tilde = averaged_obs12_rhs_dense(
            x[:9].reshape(3, 3), x[9], xi, eps, g.gamma_big, g.gamma_small
        )
        return np.concatenate([d_xi_hat.ravel(), [d_omega_tilde]])

    x_full = np.concatenate(
        [xi.ravel(), xi_hat0.ravel(), [omega12 + eps * omega_tilde0]]
    )
    x_avg = np.concatenate([xi_hat0.ravel(), [omega_tilde0]])
    gap = 0.0
    for i in range(n):
        t = i * h
        x_full = rk4_step(full, x_full, t, h)
        x_avg = rk4_step(averaged, x_avg, t, h)
        u = rot12_dense(omega12 * (t + h))
        xi_hat_full = u.T @ x_full[9:18].reshape(3, 3) @ u
        omega_tilde_full = (x_full[18] - omega12) / eps
        gap = max(
            gap,
            float(np.linalg.norm(xi_hat_full - x_avg[:9].reshape(3, 3)))
            + abs(omega_tilde_full - x_avg[9]),
        )
    return gap


def averaging_gap(
    omega12: float = 1.0,
    g: Gains12 | None = None,
    epsilons: tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125),
    a: float = 0.5,
    dt: float = 1e-3,
) -> tuple[np.ndarray, np.ndarray, float]:
    """Full vs averaged phase-1 trajectories over one period for each ε.

    Starts from ξ with population ``a`` on level 1 (rest on level 3), a tilted ξ̂ and
    Ω̃ = 1. Returns (epsilons, gaps, log-log slope of gap against ε).
    """
    g = g or Gains12()
    xi = PureState.from_amplitudes([math.sqrt(a), 0.0, math.sqrt(1.0 - a)]).to_dense()
    xi_hat0 = PureState.from_amplitudes([math.sqrt(a), 0.3, math.sqrt(1.0 - a)]).to_dense()
    gaps = []
    for eps in epsilons:
        g_eps = Gains12(gamma_big=g.gamma_big, gamma_small=g.gamma_small, epsilon=eps)
        gaps.append(_full_vs_averaged_gap(omega12, g_eps, xi, xi_hat0, 1.0, dt))
    eps_arr = np.asarray(epsilons, dtype=float)
    gaps_arr = np.asarray(gaps)
    slope = float(np.polyfit(np.log(eps_arr), np.log(gaps_arr), 1)[0])
    return eps_arr, gaps_arr, slope
