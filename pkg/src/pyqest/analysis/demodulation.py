import math

import numpy as np
import polars as pl

from ..exceptions import EmptySeries, ValidationError, WindowTooShort
from ..observers.gains import Gains12, Gains23
from ..plant.params import PlantParams

DEFAULT_WINDOW_PERIODS = 3


def predicted_times(g12: Gains12, g23: Gains23, p: PlantParams) -> tuple[float, float]:
    """Convergence time scales 2π/(εΩ12) and 4π/(εηΩ23) of the two phases."""
    if not g23.eta > 0.0:
        raise ValidationError("predicted_times needs gains23.eta > 0.")
    t12 = 2.0 * math.pi / (g12.epsilon * abs(p.omega12))
    t23 = 4.0 * math.pi / (g23.epsilon * g23.eta * abs(p.omega23))
    return t12, t23


def theta_period(t: np.ndarray, theta: np.ndarray) -> float:
    """2π over the mean angular speed of ``theta``."""
    span = t[-1] - t[0]
    speed = abs(theta[-1] - theta[0]) / span if span > 0.0 else 0.0
    return math.inf if speed == 0.0 else 2.0 * math.pi / speed


def demodulate_populations(
    y_series: tuple[np.ndarray, np.ndarray],
    theta_series: tuple[np.ndarray, np.ndarray],
    window: float | None = None,
) -> tuple[pl.DataFrame, pl.DataFrame]:
    """Trailing moving averages of y(1 + 2cos 2θ) and y(1 − 2cos 2θ).

    The averages estimate Tr(P1 ξ) and Tr(P2 ξ) of the rotating-frame state.
    ``window`` defaults to three θ periods. Each result has columns ``t`` and
    ``value`` and starts once the first window is full.
    """
    t, y = (np.asarray(a, dtype=float) for a in y_series)
    t_theta, theta = (np.asarray(a, dtype=float) for a in theta_series)
    if t.size < 2:
        raise EmptySeries("demodulation needs at least two samples.")
    if t.shape != y.shape or t_theta.shape != t.shape or not np.allclose(t, t_theta):
        raise ValueError("y and theta series must share their time stamps.")

    period = theta_period(t, theta)
    if window is None:
        window = DEFAULT_WINDOW_PERIODS * period
    if window < period * (1.0 - 1e-9):
        raise WindowTooShort(
            f"window {window:.6g} is shorter than one theta period {period:.6g}."
        )

    step = float(np.mean(np.diff(t)))
    n = int(round(window / step))
    if n > t.size:
        raise WindowTooShort(
            f"window {window:.6g} needs {n} samples, series has {t.size}."
        )

    cos2 = np.cos(2.0 * theta)
    frame = pl.DataFrame({"t": t, "p1": y * (1.0 + 2.0 * cos2), "p2": y * (1.0 - 2.0 * cos2)})
    averaged = frame.with_columns(
        pl.col("p1").rolling_mean(window_size=n),
        pl.col("p2").rolling_mean(window_size=n),
    ).drop_nulls()
    return (
        averaged.select("t", pl.col("p1").alias("value")),
        averaged.select("t", pl.col("p2").alias("value")),
    )


def frozen_output(
    xi: np.ndarray, t: np.ndarray, omega12: float
) -> tuple[np.ndarray, np.ndarray]:
    """(y, θ) for a rotating-frame state ξ held fixed while θ = Ω12 t."""
    theta = omega12 * np.asarray(t, dtype=float)
    y = 0.5 * (
        (xi[0, 0] + xi[1, 1])
        + np.cos(2.0 * theta) * (xi[0, 0] - xi[1, 1])
        + np.sin(2.0 * theta) * 2.0 * xi[0, 1]
    )
    return y, theta
