import numpy as np

from ..exceptions import ValidationError
from ..observers.gains import Gains12
from ..qmat.base import SIGMA_X12, SIGMA_Z12
from ..qmat.projector import PureState
from ..sim.integrator import n_steps_for, rk4_step
from .averaging import averaged_obs12_rhs_dense

_SX12 = SIGMA_X12.to_dense()
_SZ12 = SIGMA_Z12.to_dense()


def lyapunov12_dense(
    xi_hat: np.ndarray, omega_tilde: float, xi: np.ndarray, gamma_small: float
) -> float:
    diff = xi_hat - xi
    return (
        4.0 / gamma_small * omega_tilde**2
        + float(np.sum(_SX12 * diff)) ** 2
        + float(np.sum(_SZ12 * diff)) ** 2
    )


def lyapunov12(
    xi_hat: PureState, omega_tilde: float, xi: PureState, gamma_small: float
) -> float:
    """(4/γ12)Ω̃12² + Tr(σx^{12}(ξ̂−ξ))² + Tr(σz^{12}(ξ̂−ξ))², nonincreasing along
    the averaged phase-1 system."""
    if not gamma_small > 0.0:
        raise ValidationError(f"gamma_small must be > 0, got {gamma_small!r}.")
    return lyapunov12_dense(xi_hat.to_dense(), omega_tilde, xi.to_dense(), gamma_small)


def lyapunov_along(
    xi: PureState,
    xi_hat0: PureState,
    omega_tilde0: float,
    g: Gains12,
    horizon: float = 60.0,
    dt: float = 0.05,
) -> np.ndarray:
    """V sampled at every step of an averaged phase-1 trajectory."""
    xi_d = xi.to_dense()

    def field(t: float, x: np.ndarray) -> np.ndarray:
        d_xi_hat, d_omega = averaged_obs12_rhs_dense(
            x[:9].reshape(3, 3), x[9], xi_d, g.epsilon, g.gamma_big, g.gamma_small
        )
        return np.concatenate([d_xi_hat.ravel(), [d_omega]])

    x = np.concatenate([xi_hat0.to_dense().ravel(), [omega_tilde0]])
    n = n_steps_for(horizon, dt)
    values = np.empty(n + 1)
    values[0] = lyapunov12_dense(x[:9].reshape(3, 3), x[9], xi_d, g.gamma_small)
    for i in range(n):
        x = rk4_step(field, x, i * dt, dt)
        values[i + 1] = lyapunov12_dense(x[:9].reshape(3, 3), x[9], xi_d, g.gamma_small)
    return values


def max_lyapunov_increase(
    g: Gains12,
    n_starts: int = 50,
    seed: int = 0,
    a: float = 0.5,
    spread: float = 0.3,
    horizon: float = 60.0,
    dt: float = 0.05,
) -> float:
    """Largest one-step rise of V over ``n_starts`` perturbed averaged trajectories."""
    rng = np.random.default_rng(seed)
    base = np.array([np.sqrt(a), 0.0, np.sqrt(1.0 - a)])
    xi = PureState.from_amplitudes(base)
    worst = -np.inf
    for _ in range(n_starts):
        xi_hat0 = PureState.from_amplitudes(base + spread * rng.standard_normal(3))
        omega_tilde0 = float(rng.uniform(-1.0, 1.0))
        values = lyapunov_along(xi, xi_hat0, omega_tilde0, g, horizon, dt)
        worst = max(worst, float(np.max(np.diff(values))))
    return worst
