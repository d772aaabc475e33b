from dataclasses import dataclass

from ..qmat.base import P1, P2, trace_prod
from ..qmat.projector import PureState


@dataclass(frozen=True)
class Observer12State:
    rho_hat: PureState
    omega12_hat: float


@dataclass(frozen=True)
class Observer23State:
    rho_hat: PureState
    omega23_hat: float


def innovation(y_meas: float, rho_hat: PureState) -> float:
    """y − Tr(P1 ρ̂)."""
    return y_meas - trace_prod(P1, rho_hat.matrix)


def local_convergence_hypothesis(rho0: PureState) -> bool:
    """Local convergence of the phase-1 observer assumes 0 < Tr((P1+P2)ρ(0)) < 1."""
    weight = trace_prod(P1 + P2, rho0.matrix)
    return 0.0 < weight < 1.0
