import math

import numpy as np
import pytest

from pyqest.exceptions import ValidationError
from pyqest.plant import (
    ControlLaw,
    NoiseSpec,
    PlantParams,
    apply_noise,
    balanced_theta,
    control_signals,
    noise_draws,
    output,
    plant_rhs,
    rotating_output,
)
from pyqest.plant.dynamics import output_dense
from pyqest.plant.noise import window_index
from pyqest.qmat import (
    SIGMA_X12,
    PureState,
    RealSym3,
    from_rotating_frame,
    to_rotating_frame,
)

from .conftest import random_pure


def test_plant_params_defaults():
    p = PlantParams()
    assert (p.omega12, p.omega23) == (1.0, 0.8)


@pytest.mark.parametrize("omega12,omega23", [(0.0, 0.8), (1.0, 0.0), (math.inf, 0.8)])
def test_plant_params_rejects_zero_or_non_finite(omega12, omega23):
    with pytest.raises(ValidationError):
        PlantParams(omega12, omega23)


def test_plant_rhs_phase1_at_p1():
    d = plant_rhs(PureState.basis(1), 1.0, 0.0, PlantParams())
    assert d.allclose(SIGMA_X12 * -1.0)


def test_plant_rhs_traceless(rng):
    p = PlantParams(1.3, -0.4)
    for _ in range(50):
        d = plant_rhs(random_pure(rng), 1.0, 0.7, p)
        assert abs(d.trace()) < 1e-14


def test_output_clamps():
    assert output_dense(np.diag([1.0 + 1e-12, 0.0, 0.0])) == 1.0
    assert output_dense(np.diag([-1e-12, 0.5, 0.5])) == 0.0
    assert output(PureState.from_amplitudes([1.0, 1.0, 0.0])) == pytest.approx(0.5)


def test_rotating_output_matches_lab_output(rng):
    for theta in np.linspace(0.0, 2.0 * math.pi, 13):
        xi = random_pure(rng)
        rho = PureState(from_rotating_frame(xi.matrix, float(theta)))
        assert rotating_output(xi.matrix, float(theta)) == pytest.approx(
            output(rho), abs=1e-12
        )


def test_control_signals_phase1():
    assert control_signals(ControlLaw.phase1(), 3.0) == (1.0, 0.0, 0.0)


def test_control_signals_phase2():
    law = ControlLaw.phase2(eta=0.5, omega12_for_theta=2.0, t_phase_start=10.0)
    u12, u23, theta = control_signals(law, 10.0 + math.pi / 4.0)
    assert u12 == 1.0
    assert theta == pytest.approx(math.pi / 2.0)
    assert u23 == pytest.approx(0.0, abs=1e-15)
    assert control_signals(law, 10.0)[1] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        control_signals(law, 9.0)


def test_control_law_rejects_eta_out_of_range():
    with pytest.raises(ValidationError):
        ControlLaw.phase2(eta=1.5, omega12_for_theta=1.0, t_phase_start=0.0)


def test_noise_spec_validation():
    with pytest.raises(ValidationError):
        NoiseSpec(output_std=-0.1)
    with pytest.raises(ValidationError):
        NoiseSpec(hold_interval=0.0)
    with pytest.raises(ValidationError):
        NoiseSpec(seed=-1)


def test_silent_noise_is_zero():
    assert noise_draws(NoiseSpec(), 1.234) == (0.0, 0.0, 0.0)


def test_noise_is_held_over_the_window():
    spec = NoiseSpec(output_std=0.2, input_std=0.1, hold_interval=0.05, seed=3)
    assert window_index(spec, 0.1) == 2
    assert noise_draws(spec, 0.10) == noise_draws(spec, 0.149)
    assert noise_draws(spec, 0.10) != noise_draws(spec, 0.15)


def test_noise_depends_on_seed_only_through_the_draws():
    a = NoiseSpec(output_std=0.2, input_std=0.1, seed=1)
    b = NoiseSpec(output_std=0.2, input_std=0.1, seed=2)
    assert noise_draws(a, 0.0) == noise_draws(a, 0.0)
    assert noise_draws(a, 0.0) != noise_draws(b, 0.0)


def test_noise_scales_with_std():
    unit = NoiseSpec(output_std=1.0, input_std=1.0, seed=7)
    scaled = NoiseSpec(output_std=0.2, input_std=0.1, seed=7)
    z = noise_draws(unit, 0.3)
    nu = noise_draws(scaled, 0.3)
    assert nu == pytest.approx((0.2 * z[0], 0.1 * z[1], 0.1 * z[2]))


def test_apply_noise():
    clean = (0.4, 1.0, 0.0)
    assert apply_noise(None, 0.0, clean) == clean
    spec = NoiseSpec(output_std=0.2, input_std=0.1, seed=5)
    nu = noise_draws(spec, 0.0)
    assert apply_noise(spec, 0.0, clean) == pytest.approx(
        (0.4 + nu[0], 1.0 + nu[1], nu[2])
    )


def test_plant_rhs_is_symmetric_type():
    assert isinstance(plant_rhs(PureState.basis(2), 1.0, 1.0, PlantParams()), RealSym3)


def test_balanced_theta_equalizes_levels_1_and_2(rng):
    assert balanced_theta(PureState.basis(1).to_dense()) == pytest.approx(math.pi / 4.0)
    for _ in range(50):
        rho = random_pure(rng)
        xi = to_rotating_frame(rho.matrix, balanced_theta(rho.to_dense())).to_dense()
        assert xi[0, 0] == pytest.approx(xi[1, 1], abs=1e-12)
        assert xi[2, 2] == pytest.approx(rho.population(3), abs=1e-12)


def test_noise_draw_statistics():
    spec = NoiseSpec(output_std=0.2, input_std=0.2, hold_interval=0.05, seed=11)
    mids = (np.arange(100_000) + 0.5) * spec.hold_interval
    draws = np.array([noise_draws(spec, t) for t in mids])
    for column in draws.T:
        assert abs(column.mean()) <= 0.005
        assert abs(column.std() - 0.2) <= 0.005
