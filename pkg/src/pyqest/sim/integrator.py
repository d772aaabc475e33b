from typing import Callable

import numpy as np

from ..exceptions import NonFiniteState

VectorField = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(rhs: VectorField, state: np.ndarray, t: float, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step of dx/dt = rhs(t, x)."""
    if not dt > 0.0:
        raise ValueError(f"time step must be strictly positive, got {dt}.")
    dt2 = dt / 2.0

    k1 = rhs(t, state)
    k2 = rhs(t + dt2, state + dt2 * k1)
    k3 = rhs(t + dt2, state + dt2 * k2)
    k4 = rhs(t + dt, state + dt * k3)

    new_state = state + (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0)
    if not np.all(np.isfinite(new_state)):
        raise NonFiniteState(f"non-finite state after the step at t={t:.6g}.")
    return new_state


def integrate(
    rhs: VectorField, state: np.ndarray, t0: float, dt: float, n_steps: int
) -> np.ndarray:
    """``n_steps`` RK4 steps; returns the array of states including the initial one."""
    states = np.empty((n_steps + 1,) + np.shape(state), dtype=np.result_type(state))
    states[0] = state
    for i in range(n_steps):
        states[i + 1] = rk4_step(rhs, states[i], t0 + i * dt, dt)
    return states


def n_steps_for(horizon: float, dt: float) -> int:
    n = int(round(horizon / dt))
    if abs(n * dt - horizon) > 1e-9 * max(1.0, abs(horizon)):
        raise ValueError(f"horizon {horizon} is not a multiple of dt={dt}.")
    return n


def steps_covering(horizon: float, dt: float) -> tuple[int, float]:
    """Smallest step count with step <= ``dt`` landing exactly on ``horizon``."""
    n = max(1, int(np.ceil(horizon / dt - 1e-9)))
    return n, horizon / n
