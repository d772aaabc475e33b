import dataclasses
import math

import numpy as np
import pytest

from pyqest.exceptions import EmptySeries, NonFiniteState, ValidationError
from pyqest.observers import Gains12, Gains23
from pyqest.plant import NoiseSpec, PlantParams
from pyqest.plant.dynamics import plant_rhs_dense
from pyqest.qmat import PureState
from pyqest.qmat.projector import purity_defect_dense
from pyqest.sim import (
    COLUMNS,
    Handoff,
    InitialConditions,
    Scenario,
    SimConfig,
    Trajectory,
    TwoStepEstimation,
    convergence_time,
    handoff_sensitivity,
    integrate,
    monte_carlo,
    n_steps_for,
    rk4_step,
    run_phase1,
    run_phase2,
    run_two_step,
)


def test_rk4_exponential_decay():
    y = rk4_step(lambda t, x: -x, np.array([1.0]), 0.0, 0.01)
    assert abs(y[0] - math.exp(-0.01)) <= 1e-11


def test_rk4_harmonic_oscillator_energy():
    states = integrate(
        lambda t, x: np.array([x[1], -x[0]]), np.array([1.0, 0.0]), 0.0, 0.01, 10_000
    )
    energy = 0.5 * np.sum(states**2, axis=1)
    assert np.max(np.abs(energy - 0.5)) / 0.5 <= 1e-7


def test_rk4_rejects_bad_step_and_non_finite():
    with pytest.raises(ValueError):
        rk4_step(lambda t, x: x, np.ones(1), 0.0, 0.0)
    with pytest.raises(NonFiniteState):
        rk4_step(lambda t, x: np.full_like(x, np.inf), np.ones(2), 0.0, 0.1)


def test_rk4_preserves_plant_trace():
    rho = PureState.from_amplitudes([0.3, 0.8, 0.5]).to_dense().ravel()
    step = rk4_step(
        lambda t, x: plant_rhs_dense(x.reshape(3, 3), 1.0, 0.4, 1.0, 0.8).ravel(),
        rho,
        0.0,
        1e-3,
    )
    assert abs(np.trace(step.reshape(3, 3)) - 1.0) <= 1e-14


def test_n_steps_for():
    assert n_steps_for(50.0, 1e-3) == 50_000
    with pytest.raises(ValueError):
        n_steps_for(1.0, 0.3)


def test_sim_config_validation():
    with pytest.raises(ValidationError):
        SimConfig(dt=0.0)
    with pytest.raises(ValidationError):
        SimConfig(t1_end=10.0, t2_end=5.0)
    with pytest.raises(ValidationError):
        SimConfig(sample_stride=0)
    assert SimConfig(handoff="reset").handoff == Handoff.RESET


def test_initial_conditions_defaults():
    init, p = InitialConditions(), PlantParams()
    assert init.omega12_hat(p) == pytest.approx(1.0 / 1.5)
    assert init.omega23_hat(p) == pytest.approx(1.2)
    assert init.rho().population(1) == 1.0


def test_convergence_time_constant_series():
    t = np.arange(5.0)
    assert convergence_time(t, np.full(5, 2.0), 2.0, 0.05) == 0.0


def test_convergence_time_exit_at_last_sample():
    values = np.array([1.0, 1.0, 1.0, 1.5])
    assert convergence_time(np.arange(4.0), values, 1.0, 0.05) is None


def test_convergence_time_entry():
    values = np.array([2.0, 1.3, 1.04, 0.97, 1.01])
    assert convergence_time(np.arange(5.0), values, 1.0, 0.05) == 2.0


def test_convergence_time_monotone_in_band(rng):
    t = np.linspace(0.0, 10.0, 200)
    values = 1.0 + np.exp(-t) * np.cos(5.0 * t) + 0.001 * rng.standard_normal(200)
    times = [convergence_time(t, values, 1.0, band) for band in (0.02, 0.05, 0.1, 0.3)]
    assert all(a >= b for a, b in zip(times, times[1:]))


def test_convergence_time_errors():
    with pytest.raises(EmptySeries):
        convergence_time(np.array([]), np.array([]), 1.0, 0.05)
    with pytest.raises(ValueError):
        convergence_time(np.arange(2.0), np.ones(2), 1.0, 0.0)
    with pytest.raises(ValueError):
        convergence_time(np.arange(2.0), np.ones(2), 0.0, 0.1)


def test_trajectory_rejects_bad_frames(fast_scenario):
    traj, _ = TwoStepEstimation(fast_scenario).run()
    with pytest.raises(ValidationError):
        Trajectory(traj.frame.drop("fidelity"), traj.final_rho, traj.final_rho_hat)
    with pytest.raises(ValidationError):
        Trajectory(traj.frame.reverse(), traj.final_rho, traj.final_rho_hat)


def test_phase1_equilibrium(fast_sim):
    p = PlantParams()
    init = InitialConditions(omega12_hat0=p.omega12)
    traj, omega = run_phase1(p, Gains12(), None, fast_sim, init=init)
    assert np.max(np.abs(traj.column("omega12_hat") - p.omega12)) <= 1e-10
    assert omega == pytest.approx(p.omega12, abs=1e-10)


def test_phase1_zero_gain_freezes_estimate(fast_sim):
    p = PlantParams()
    traj, omega = run_phase1(p, Gains12(gamma_small=0.0), None, fast_sim)
    assert np.all(traj.column("omega12_hat") == p.omega12 / 1.5)
    assert omega == p.omega12 / 1.5


def test_phase1_samples(fast_sim):
    traj, _ = run_phase1(PlantParams(), Gains12(), None, fast_sim)
    assert traj.frame.columns == COLUMNS
    assert len(traj) == 51
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(5.0)


def test_phase1_output_follows_rabi_oscillation(fast_sim):
    p = PlantParams()
    traj, _ = run_phase1(p, Gains12(), None, fast_sim)
    expected = np.cos(p.omega12 * traj.times) ** 2
    assert np.max(np.abs(traj.column("y_true") - expected)) <= 1e-7
    assert np.all(traj.column("y_meas") == traj.column("y_true"))


def test_phase2_requires_omega12(fast_sim):
    with pytest.raises(ValidationError):
        run_phase2(
            PlantParams(),
            Gains23(),
            None,
            fast_sim,
            PureState.basis(1),
            PureState.basis(1),
        )


def test_phase2_equilibrium(fast_sim):
    p = PlantParams()
    g = Gains23(omega12_known=p.omega12)
    start = PureState.from_amplitudes([0.6, 0.6, 0.5])
    traj, omega = run_phase2(p, g, None, fast_sim, start, start, p.omega23)
    assert omega == pytest.approx(p.omega23, abs=1e-10)
    assert np.max(np.abs(traj.column("omega23_hat") - p.omega23)) <= 1e-10
    assert traj.times[0] == pytest.approx(fast_sim.t1_end)


@pytest.mark.parametrize("theta0,low,high", [(None, 0.3, 1.0), (0.0, 0.0, 0.1)])
def test_phase2_start_angle_feeds_level3(theta0, low, high):
    # from P1, only a balanced start puts population on level 2 for the 2-3 drive
    cfg = SimConfig(
        dt=1e-2,
        t1_end=5.0,
        t2_end=15.0,
        sample_stride=10,
        reproject_stride=10,
        theta0=theta0,
    )
    p = PlantParams()
    g = Gains23(omega12_known=p.omega12)
    start = PureState.basis(1)
    traj, _ = run_phase2(p, g, None, cfg, start, start, p.omega23)
    assert low <= np.max(traj.column("r33")) <= high


def test_phase2_without_drive_stalls(fast_sim):
    p = PlantParams()
    g = Gains23(eta=0.0, omega12_known=p.omega12)
    start = PureState.basis(1)
    traj, omega = run_phase2(p, g, None, fast_sim, start, start, 1.2)
    assert np.max(np.abs(traj.column("omega23_hat") - 1.2)) <= 1e-6
    assert np.max(np.abs(traj.column("r33"))) <= 1e-12


def test_two_step_row_count_and_columns(fast_scenario):
    traj, result = TwoStepEstimation(fast_scenario).run()
    n_steps = n_steps_for(fast_scenario.sim.t2_end, fast_scenario.sim.dt)
    assert len(traj) == n_steps // fast_scenario.sim.sample_stride + 1
    assert np.all(np.diff(traj.times) > 0.0)
    assert result.seed == 0
    assert not result.noisy
    assert result.rel_err12 >= 0.0 and result.rel_err23 >= 0.0


def test_two_step_hands_over_omega12(fast_scenario):
    traj, result = TwoStepEstimation(fast_scenario).run()
    phase2 = traj.frame.filter(traj.frame["t"] > fast_scenario.sim.t1_end)
    assert np.all(phase2["omega12_hat"].to_numpy() == result.omega12_hat_final)


def test_two_step_is_deterministic(fast_scenario):
    a, ra = TwoStepEstimation(fast_scenario).run()
    b, rb = TwoStepEstimation(fast_scenario).run()
    assert a.frame.equals(b.frame)
    assert ra == rb


def test_run_two_step_matches_class(fast_scenario):
    s = fast_scenario
    result = run_two_step(s.plant, s.gains12, s.gains23, s.noise, s.sim, s.init)
    assert result == TwoStepEstimation(s).run()[1]


def test_handoff_reset_restarts_states(fast_sim):
    reset = Scenario(sim=dataclasses.replace(fast_sim, handoff="reset"))
    traj, _ = TwoStepEstimation(reset).run()
    continued, _ = TwoStepEstimation(Scenario(sim=fast_sim)).run()
    assert not traj.frame.equals(continued.frame)
    first = traj.frame.filter(traj.frame["t"] > fast_sim.t1_end).row(0, named=True)
    # one step of phase 2 from P1 keeps almost all population on level 1
    assert first["r11"] > 0.98
    assert first["rh11"] > 0.98


def test_measurement_hold(fast_sim):
    held = Scenario(sim=dataclasses.replace(fast_sim, measurement_period=0.5))
    traj, _ = TwoStepEstimation(held).run()
    y = traj.column("y_meas")
    t = traj.times
    # samples every 0.1 time units, so each held value repeats over five samples
    for k in range(4):
        block = y[(t >= 0.5 * k - 1e-9) & (t < 0.5 * (k + 1) - 1e-9)]
        assert np.all(block == block[0])


def test_noisy_runs_differ_by_seed(fast_sim):
    s = Scenario(sim=fast_sim, noise=NoiseSpec(output_std=0.2, input_std=0.1, seed=1))
    r1 = TwoStepEstimation(s).run()[1]
    r2 = TwoStepEstimation(s.with_seed(2)).run()[1]
    assert r1.noisy and r2.noisy
    assert r1.omega12_hat_final != r2.omega12_hat_final


def test_monte_carlo_single_run_matches(fast_scenario):
    results, summary = monte_carlo(fast_scenario, 1, 0, progress=False)
    assert results[0] == TwoStepEstimation(fast_scenario).run()[1]
    assert summary["metric"].to_list() == ["rel_err12", "rel_err23", "tconv12", "tconv23"]


def test_monte_carlo_labels_seeds_without_noise_section(fast_scenario):
    results, _ = monte_carlo(fast_scenario, 3, 10, progress=False)
    assert [r.seed for r in results] == [10, 11, 12]
    assert not any(r.noisy for r in results)
    assert len({r.omega23_hat_final for r in results}) == 1


def test_monte_carlo_noise_free_runs_are_identical(fast_sim):
    s = Scenario(sim=fast_sim, noise=NoiseSpec())
    results, summary = monte_carlo(s, 5, 10, progress=False)
    assert [r.seed for r in results] == [10, 11, 12, 13, 14]
    assert len({r.omega12_hat_final for r in results}) == 1
    assert len({r.omega23_hat_final for r in results}) == 1
    assert summary.filter(summary["metric"] == "rel_err12")["iqr"][0] == 0.0


def test_monte_carlo_jobs_keep_seed_order(fast_sim):
    s = Scenario(sim=fast_sim, noise=NoiseSpec(output_std=0.2, input_std=0.1))
    serial, _ = monte_carlo(s, 3, 0, jobs=1, progress=False)
    parallel, _ = monte_carlo(s, 3, 0, jobs=2, progress=False)
    assert serial == parallel


def test_monte_carlo_records_failures(fast_scenario, monkeypatch):
    class Exploding:
        def __init__(self, scenario):
            self.scenario = scenario

        def run(self):
            if self.scenario.seed % 2:
                raise NonFiniteState("blew up")
            return TwoStepEstimation(self.scenario).run()

    monkeypatch.setattr("pyqest.sim.montecarlo.TwoStepEstimation", Exploding)
    noisy = dataclasses.replace(fast_scenario, noise=NoiseSpec(output_std=0.1))
    results, summary = monte_carlo(noisy, 3, 0, progress=False)
    assert [r.ok for r in results] == [True, False, True]
    assert results[1].status == "failed: blew up"
    assert math.isnan(results[1].omega12_hat_final)
    assert summary.filter(summary["metric"] == "rel_err12")["n"][0] == 2


def test_monte_carlo_rejects_empty_sweep(fast_scenario):
    with pytest.raises(ValueError):
        monte_carlo(fast_scenario, 0, 0, progress=False)


def test_handoff_sensitivity(fast_scenario):
    frame = handoff_sensitivity(fast_scenario, [-0.05, 0.0, 0.05])
    assert frame.columns == ["offset", "omega12_known", "omega23_hat_final", "rel_err23"]
    assert frame["omega12_known"].to_list() == pytest.approx([0.95, 1.0, 1.05])


@pytest.mark.slow
def test_reference_scenario_converges():
    traj, result = TwoStepEstimation(Scenario()).run()
    assert result.rel_err12 <= 0.02
    # one phase-2 time constant (about 45π) fits in [50, 200], leaving roughly 8%
    assert result.rel_err23 <= 0.10
    assert result.tconv12 is not None and 10.0 <= result.tconv12 <= 30.0
    assert result.tconv23 is not None
    assert 0.5 * 45.0 * math.pi <= result.tconv23 <= 2.0 * 45.0 * math.pi

    for i in range(len(traj)):
        for hat in (False, True):
            rho = traj.rho_at(i, hat=hat)
            assert abs(np.trace(rho) - 1.0) <= 1e-9
            assert purity_defect_dense(rho) <= 1e-8


@pytest.mark.slow
def test_noisy_reference_run_stays_on_projectors():
    noisy = Scenario(noise=NoiseSpec(output_std=0.2, input_std=0.1, seed=1))
    traj, result = TwoStepEstimation(noisy).run()
    assert result.ok and result.noisy
    for i in range(len(traj)):
        for hat in (False, True):
            rho = traj.rho_at(i, hat=hat)
            assert abs(np.trace(rho) - 1.0) <= 1e-9
            assert purity_defect_dense(rho) <= 1e-8


@pytest.mark.slow
def test_halving_dt_changes_estimates_little():
    coarse = TwoStepEstimation(Scenario()).run()[1]
    fine = TwoStepEstimation(
        Scenario(sim=SimConfig(dt=5e-4, sample_stride=200, reproject_stride=200))
    ).run()[1]
    assert abs(fine.omega12_hat_final - coarse.omega12_hat_final) <= 1e-6
    assert abs(fine.omega23_hat_final - coarse.omega23_hat_final) <= 1e-6


@pytest.mark.slow
def test_noisy_sweep_is_robust():
    noisy = Scenario(noise=NoiseSpec(output_std=0.2, input_std=0.1))
    results, summary = monte_carlo(noisy, 20, 0, jobs=4, progress=False)
    clean = TwoStepEstimation(Scenario()).run()[1]
    stats = {row["metric"]: row for row in summary.iter_rows(named=True)}
    assert stats["rel_err12"]["median"] <= 0.05
    assert stats["rel_err23"]["median"] <= 0.10
    assert abs(stats["tconv12"]["median"] - clean.tconv12) <= 0.5 * clean.tconv12
    assert abs(stats["tconv23"]["median"] - clean.tconv23) <= 0.5 * clean.tconv23
