import math

import numpy as np

from ..qmat.base import (
    P1,
    P2,
    SIGMA12,
    SIGMA23,
    SIGMA_X12,
    SIGMA_Z12,
    RealSym3,
    commutator_dense,
    trace_prod,
)
from ..qmat.projector import PureState
from .params import ControlLaw, Phase, PlantParams

_S12 = SIGMA12.to_dense()
_S23 = SIGMA23.to_dense()


def control_theta(law: ControlLaw, t: float) -> float:
    if law.phase == Phase.PHASE1:
        return 0.0
    return law.omega12_for_theta * (t - law.t_phase_start) + law.theta0


def balanced_theta(rho: np.ndarray) -> float:
    """θ with Tr(P1 ξ) = Tr(P2 ξ) for ξ = Uᵀ(θ) ρ U(θ).

    The population difference in the rotating frame is
    cos2θ (ρ11 − ρ22) − 2 sin2θ ρ12.
    """
    return 0.5 * math.atan2(float(rho[0, 0] - rho[1, 1]), 2.0 * float(rho[0, 1]))


def control_signals(law: ControlLaw, t: float) -> tuple[float, float, float]:
    """(u12, u23, θ) commanded at time ``t``."""
    if law.phase == Phase.PHASE1:
        return 1.0, 0.0, 0.0
    if t < law.t_phase_start - 1e-12:
        raise ValueError(
            f"phase-2 control queried at t={t} before its start {law.t_phase_start}."
        )
    theta = control_theta(law, t)
    return 1.0, law.eta * math.cos(theta), theta


def plant_rhs_dense(
    rho: np.ndarray, u12: float, u23: float, omega12: float, omega23: float
) -> np.ndarray:
    return u12 * omega12 * commutator_dense(
        _S12, rho
    ) + u23 * omega23 * commutator_dense(_S23, rho)


def plant_rhs(rho: PureState, u12: float, u23: float, p: PlantParams) -> RealSym3:
    """u12 Ω12 [σ^{12}, ρ] + u23 Ω23 [σ^{23}, ρ]."""
    return RealSym3.from_dense(
        plant_rhs_dense(rho.to_dense(), u12, u23, p.omega12, p.omega23)
    )


def output_dense(rho: np.ndarray) -> float:
    return min(1.0, max(0.0, float(rho[0, 0])))


def output(rho: PureState) -> float:
    """y = Tr(P1 ρ), clamped to [0, 1]."""
    return output_dense(rho.to_dense())


def rotating_output(xi: RealSym3, theta: float) -> float:
    """The output written with the rotating-frame state ξ = Uᵀ ρ U."""
    return 0.5 * (
        trace_prod(P1 + P2, xi)
        + math.cos(2.0 * theta) * trace_prod(SIGMA_Z12, xi)
        + math.sin(2.0 * theta) * trace_prod(SIGMA_X12, xi)
    )
