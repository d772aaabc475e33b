import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ..observers.gains import Gains12, Gains23
from ..plant.params import PlantParams
from ..qmat.projector import PureState
from ..utils.logging import log_decorator
from .averaging import averaging_gap
from .demodulation import demodulate_populations, frozen_output
from .labframe import LabFrameParams, labframe_compare
from .linearized import (
    LinearizedParams,
    averaged12_jacobian,
    linearized12,
    linearized12_spectrum,
    linearized12_time_constant,
)
from .lyapunov import max_lyapunov_increase


class Check(str, Enum):
    AVERAGING = "averaging"
    LINEARIZATION = "linearization"
    LYAPUNOV = "lyapunov"
    DEMODULATION = "demodulation"
    RWA = "rwa"


@dataclass(frozen=True)
class AnalysisReport:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "measured": self.measured}


@log_decorator(show_arguments=False)
def averaging_check(
    g: Gains12 | None = None,
    omega12: float = 1.0,
    epsilons: tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125),
    slope_tol: float = 0.15,
) -> AnalysisReport:
    eps, gaps, slope = averaging_gap(omega12=omega12, g=g, epsilons=epsilons)
    return AnalysisReport(
        name=Check.AVERAGING.value,
        passed=abs(slope - 1.0) <= slope_tol,
        measured={
            "epsilons": eps.tolist(),
            "gaps": gaps.tolist(),
            "slope": slope,
            "fitted_constant": float(np.max(gaps / eps)),
        },
    )


@log_decorator(show_arguments=False)
def linearization_check(
    g: Gains12 | None = None,
    a: float = 0.5,
    n_random: int = 20,
    seed: int = 0,
    jacobian_tol: float = 1e-5,
) -> AnalysisReport:
    """Closed-form spectrum at ``a``, Jacobian agreement on random parameter sets and
    stability over a ∈ {0.1, ..., 0.9}."""
    g = g or Gains12()
    p = LinearizedParams.from_gains(g, a)
    spectrum = linearized12_spectrum(p)

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_random):
        q = LinearizedParams(
            a=float(rng.uniform(0.1, 0.9)),
            epsilon=float(rng.uniform(0.05, 0.5)),
            gamma_big=float(rng.uniform(0.5, 8.0)),
            gamma_small=float(rng.uniform(0.1, 4.0)),
        )
        worst = max(
            worst, float(np.max(np.abs(averaged12_jacobian(q) - linearized12(q))))
        )

    grid = [round(0.1 * k, 1) for k in range(1, 10)]
    stable = all(
        np.all(linearized12_spectrum(LinearizedParams.from_gains(g, x)).real < 0.0)
        for x in grid
    )
    return AnalysisReport(
        name=Check.LINEARIZATION.value,
        passed=bool(worst <= jacobian_tol and stable),
        measured={
            "a": a,
            "eigenvalues_real": spectrum.real.tolist(),
            "eigenvalues_imag": spectrum.imag.tolist(),
            "time_constant": linearized12_time_constant(p),
            "jacobian_gap": worst,
            "stable_on_grid": stable,
        },
    )


@log_decorator(show_arguments=False)
def lyapunov_check(
    g: Gains12 | None = None,
    n_starts: int = 50,
    seed: int = 0,
    tol: float = 1e-9,
) -> AnalysisReport:
    g = g or Gains12()
    worst = max_lyapunov_increase(g, n_starts=n_starts, seed=seed)
    return AnalysisReport(
        name=Check.LYAPUNOV.value,
        passed=worst <= tol,
        measured={
            "n_starts": n_starts,
            "max_step_increase": worst,
            "nonincreasing": worst <= tol,
        },
    )


@log_decorator(show_arguments=False)
def demodulation_check(
    p: PlantParams | None = None,
    amplitudes: tuple[float, float, float] = (0.6, 0.5, 0.4),
    samples_per_period: int = 200,
    periods: int = 6,
    tol: float = 1e-3,
) -> AnalysisReport:
    """Demodulates the output of a frozen rotating-frame state and compares the
    averages with its populations."""
    p = p or PlantParams()
    xi = PureState.from_amplitudes(amplitudes).to_dense()
    period = 2.0 * math.pi / abs(p.omega12)
    t = np.arange(periods * samples_per_period + 1) * (period / samples_per_period)
    y, theta = frozen_output(xi, t, p.omega12)
    p1, p2 = demodulate_populations((t, y), (t, theta))
    err1 = float(np.max(np.abs(p1["value"].to_numpy() - xi[0, 0])))
    err2 = float(np.max(np.abs(p2["value"].to_numpy() - xi[1, 1])))
    return AnalysisReport(
        name=Check.DEMODULATION.value,
        passed=max(err1, err2) <= tol,
        measured={
            "population1": float(xi[0, 0]),
            "population2": float(xi[1, 1]),
            "max_error1": err1,
            "max_error2": err2,
        },
    )


@log_decorator(show_arguments=False)
def rwa_check(
    lp: LabFrameParams | None = None,
    u12: float = 1.0,
    u23: float = 0.0,
    horizon: float | None = None,
    tol: float = 0.05,
) -> AnalysisReport:
    lp = lp or LabFrameParams()
    gap = labframe_compare(lp, u12, u23, horizon)
    return AnalysisReport(
        name=Check.RWA.value,
        passed=gap <= tol,
        measured={"rwa_gap": gap, "separation": lp.separation()},
    )
