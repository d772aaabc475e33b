import dataclasses
from typing import Callable

import numpy as np
import polars as pl

from ..observers.base import local_convergence_hypothesis
from ..observers.gains import Gains12, Gains23
from ..observers.obs12 import obs12_rhs_dense
from ..observers.obs23 import obs23_rhs_dense
from ..plant.dynamics import (
    balanced_theta,
    control_signals,
    output_dense,
    plant_rhs_dense,
)
from ..plant.noise import noise_draws
from ..plant.params import ControlLaw, NoiseSpec, Phase, PlantParams
from ..qmat.projector import PureState, nearest_projector
from ..utils.logging import get_logger, log_decorator
from .config import Handoff, InitialConditions, Scenario, SimConfig
from .integrator import n_steps_for, rk4_step
from .metrics import EstimationResult, convergence_time, relative_error
from .trajectory import Trajectory, sample_row

logger = get_logger(__name__)

# (rho_hat, omega_hat, y, theta) -> (d_rho_hat, d_omega_hat)
ObserverField = Callable[[np.ndarray, float, float, float], tuple[np.ndarray, float]]


def _co_integrate(
    p: PlantParams,
    law: ControlLaw,
    observer: ObserverField,
    noise: NoiseSpec | None,
    cfg: SimConfig,
    rho0: PureState,
    rho_hat0: PureState,
    omega_hat0: float,
    t_start: float,
    n_steps: int,
    step_offset: int,
    record_initial: bool,
    columns: Callable[[float], tuple[float, float]],
) -> tuple[Trajectory, float]:
    """Integrates plant and observer together and samples the joint run.

    ``columns`` maps the running estimate to the (Ω̂12, Ω̂23) columns of the samples.
    Plant and observer get the same trace renormalisation and reprojection, so
    ρ̂ = ρ stays a fixed point of the joint step.
    """
    dt = cfg.dt
    state = np.empty(19)
    state[:9] = rho0.to_dense().ravel()
    state[9:18] = rho_hat0.to_dense().ravel()
    state[18] = omega_hat0

    held_y: float | None = None
    nu_y = nu_12 = nu_23 = 0.0
    next_latch = t_start
    phase1 = law.phase == Phase.PHASE1
    # controls at the three distinct RK4 stage times of the current step
    controls: dict[float, tuple[float, float, float]] = {}
    rows = []

    def controls_at(tau: float) -> tuple[float, float, float]:
        if phase1:
            return 1.0, 0.0, 0.0
        c = controls.get(tau)
        if c is None:
            c = controls[tau] = control_signals(law, tau)
        return c

    def field(tau: float, x: np.ndarray) -> np.ndarray:
        u12, u23, theta = controls_at(tau)
        rho = x[:9].reshape(3, 3)
        d_rho = plant_rhs_dense(
            rho, u12 + nu_12, u23 + nu_23, p.omega12, p.omega23
        )
        y = held_y if held_y is not None else output_dense(rho) + nu_y
        d_rho_hat, d_omega = observer(x[9:18].reshape(3, 3), x[18], y, theta)
        out = np.empty(19)
        out[:9] = d_rho.reshape(9)
        out[9:18] = d_rho_hat.reshape(9)
        out[18] = d_omega
        return out

    for i in range(n_steps + 1):
        t = t_start + i * dt
        if noise is not None:
            nu_y, nu_12, nu_23 = noise_draws(noise, t)
        if cfg.measurement_period is not None and t >= next_latch - 1e-12:
            held_y = output_dense(state[:9].reshape(3, 3)) + nu_y
            next_latch += cfg.measurement_period

        g = step_offset + i
        if g % cfg.sample_stride == 0 and (i > 0 or record_initial):
            rho = state[:9].reshape(3, 3)
            y_now = held_y if held_y is not None else output_dense(rho) + nu_y
            rows.append(
                sample_row(
                    t,
                    output_dense(rho),
                    y_now,
                    rho,
                    state[9:18].reshape(3, 3),
                    *columns(state[18]),
                )
            )
        if i == n_steps:
            break

        controls.clear()
        state = rk4_step(field, state, t, dt)

        reproject = (g + 1) % cfg.reproject_stride == 0
        for block in (slice(0, 9), slice(9, 18)):
            m = state[block].reshape(3, 3)
            if reproject:
                state[block] = nearest_projector(m).to_dense().ravel()
            else:
                state[block] /= float(np.trace(m))

    trajectory = Trajectory.from_rows(
        rows,
        final_rho=nearest_projector(state[:9].reshape(3, 3)),
        final_rho_hat=nearest_projector(state[9:18].reshape(3, 3)),
    )
    return trajectory, float(state[18])


@log_decorator(show_arguments=False)
def run_phase1(
    p: PlantParams,
    g: Gains12,
    noise: NoiseSpec | None,
    cfg: SimConfig,
    init: InitialConditions | None = None,
    omega23_hat_column: float = float("nan"),
) -> tuple[Trajectory, float]:
    """Phase 1: u = (1, 0), observer of (ρ̂, Ω̂12) from t = 0 to ``cfg.t1_end``."""
    init = init or InitialConditions()
    rho0 = init.rho()
    if not local_convergence_hypothesis(rho0):
        logger.warning(
            "Tr((P1+P2)rho(0)) is outside (0, 1); the local convergence "
            "hypothesis of the phase-1 observer does not hold for this start."
        )

    def observer(rho_hat, omega_hat, y, theta):
        return obs12_rhs_dense(
            rho_hat, omega_hat, y, g.epsilon, g.gamma_big, g.gamma_small
        )

    return _co_integrate(
        p=p,
        law=ControlLaw.phase1(),
        observer=observer,
        noise=noise,
        cfg=cfg,
        rho0=rho0,
        rho_hat0=init.rho_hat(),
        omega_hat0=init.omega12_hat(p),
        t_start=0.0,
        n_steps=n_steps_for(cfg.t1_end, cfg.dt),
        step_offset=0,
        record_initial=True,
        columns=lambda w: (w, omega23_hat_column),
    )


@log_decorator(show_arguments=False)
def run_phase2(
    p: PlantParams,
    g: Gains23,
    noise: NoiseSpec | None,
    cfg: SimConfig,
    rho_init: PureState,
    rho_hat_init: PureState,
    omega23_hat_init: float | None = None,
    record_initial: bool = True,
) -> tuple[Trajectory, float]:
    """Phase 2: u = (1, η cos θ), observer of (ρ̂, Ω̂23) from ``t1_end`` to ``t2_end``.

    θ and the observer drift both use ``g.omega12_known``. Unless ``cfg.theta0`` is
    set, θ starts where the estimate ``rho_hat_init`` puts equal populations on
    levels 1 and 2 of the rotating frame.
    """
    omega12_known = g.require_omega12()
    if omega23_hat_init is None:
        omega23_hat_init = InitialConditions().omega23_hat(p)
    theta0 = cfg.theta0
    if theta0 is None:
        theta0 = balanced_theta(rho_hat_init.to_dense())
        logger.info(f"phase-2 theta0 = {theta0:.6g} balances levels 1 and 2.")
    law = ControlLaw.phase2(
        eta=g.eta,
        omega12_for_theta=omega12_known,
        t_phase_start=cfg.t1_end,
        theta0=theta0,
    )

    def observer(rho_hat, omega_hat, y, theta):
        return obs23_rhs_dense(
            rho_hat,
            omega_hat,
            y,
            theta,
            g.epsilon,
            g.eta,
            g.gamma_big,
            g.gamma_small,
            omega12_known,
        )

    n1 = n_steps_for(cfg.t1_end, cfg.dt)
    return _co_integrate(
        p=p,
        law=law,
        observer=observer,
        noise=noise,
        cfg=cfg,
        rho0=rho_init,
        rho_hat0=rho_hat_init,
        omega_hat0=omega23_hat_init,
        t_start=cfg.t1_end,
        n_steps=n_steps_for(cfg.t2_end, cfg.dt) - n1,
        step_offset=n1,
        record_initial=record_initial,
        columns=lambda w: (omega12_known, w),
    )


class TwoStepEstimation:
    """Phase 1 estimates Ω12, whose final estimate drives phase 2 estimating Ω23."""

    def __init__(
        self,
        scenario: Scenario,
        band12: float = 0.05,
        band23: float = 0.10,
        log_file: str | None = None,
        log_sub_dir: str | None = None,
    ):
        self._log_file = log_file
        self._log_sub_dir = log_sub_dir
        self.scenario = scenario
        self._band12 = band12
        self._band23 = band23

    def __repr__(self) -> str:
        return f"TwoStepEstimation(seed={self.scenario.seed}, noisy={self.scenario.noisy})"

    @log_decorator()
    def run(self) -> tuple[Trajectory, EstimationResult]:
        s = self.scenario
        p, cfg = s.plant, s.sim
        omega23_hat0 = s.init.omega23_hat(p)

        traj1, omega12_hat = run_phase1(
            p, s.gains12, s.noise, cfg, init=s.init, omega23_hat_column=omega23_hat0
        )

        if cfg.handoff == Handoff.CONTINUE:
            rho_init, rho_hat_init = traj1.final_rho, traj1.final_rho_hat
        else:
            rho_init, rho_hat_init = s.init.rho(), s.init.rho_hat()

        gains23 = dataclasses.replace(s.gains23, omega12_known=omega12_hat)
        traj2, omega23_hat = run_phase2(
            p,
            gains23,
            s.noise,
            cfg,
            rho_init=rho_init,
            rho_hat_init=rho_hat_init,
            omega23_hat_init=omega23_hat0,
            record_initial=False,
        )
        trajectory = traj1.concat(traj2)
        return trajectory, self._result(trajectory, omega12_hat, omega23_hat)

    def _result(
        self, trajectory: Trajectory, omega12_hat: float, omega23_hat: float
    ) -> EstimationResult:
        s = self.scenario
        p, cfg = s.plant, s.sim
        phase1 = trajectory.between(0.0, cfg.t1_end)
        phase2 = trajectory.between(cfg.t1_end, cfg.t2_end)
        tconv12 = convergence_time(
            phase1["t"].to_numpy(),
            phase1["omega12_hat"].to_numpy(),
            p.omega12,
            self._band12,
        )
        tconv23 = convergence_time(
            phase2["t"].to_numpy() - cfg.t1_end,
            phase2["omega23_hat"].to_numpy(),
            p.omega23,
            self._band23,
        )
        return EstimationResult(
            omega12_hat_final=omega12_hat,
            omega23_hat_final=omega23_hat,
            rel_err12=relative_error(omega12_hat, p.omega12),
            rel_err23=relative_error(omega23_hat, p.omega23),
            tconv12=tconv12,
            tconv23=tconv23,
            seed=s.seed,
            noisy=s.noisy,
        )


def run_two_step(
    p: PlantParams,
    gains12: Gains12,
    gains23: Gains23,
    noise: NoiseSpec | None,
    cfg: SimConfig,
    init: InitialConditions | None = None,
) -> EstimationResult:
    scenario = Scenario(
        plant=p,
        gains12=gains12,
        gains23=gains23,
        noise=noise,
        sim=cfg,
        init=init or InitialConditions(),
    )
    return TwoStepEstimation(scenario).run()[1]


@log_decorator(show_arguments=False)
def handoff_sensitivity(scenario: Scenario, offsets: list[float]) -> pl.DataFrame:
    """Final Ω̂23 when phase 2 is handed Ω12·(1 + offset) instead of the estimate."""
    p, cfg = scenario.plant, scenario.sim
    omega23_hat0 = scenario.init.omega23_hat(p)
    traj1, _ = run_phase1(
        p, scenario.gains12, scenario.noise, cfg, init=scenario.init
    )
    rows = []
    for offset in offsets:
        omega12_known = p.omega12 * (1.0 + offset)
        gains23 = dataclasses.replace(scenario.gains23, omega12_known=omega12_known)
        _, omega23_hat = run_phase2(
            p,
            gains23,
            scenario.noise,
            cfg,
            rho_init=traj1.final_rho,
            rho_hat_init=traj1.final_rho_hat,
            omega23_hat_init=omega23_hat0,
        )
        rows.append(
            {
                "offset": float(offset),
                "omega12_known": omega12_known,
                "omega23_hat_final": omega23_hat,
                "rel_err23": relative_error(omega23_hat, p.omega23),
            }
        )
    return pl.DataFrame(rows)
