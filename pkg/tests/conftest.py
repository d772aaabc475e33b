import numpy as np
import pytest

from pyqest.qmat.projector import PureState
from pyqest.sim.config import Scenario, SimConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def fast_sim() -> SimConfig:
    return SimConfig(
        dt=1e-2, t1_end=5.0, t2_end=10.0, sample_stride=10, reproject_stride=10
    )


@pytest.fixture
def fast_scenario(fast_sim) -> Scenario:
    return Scenario(sim=fast_sim)


def random_pure(rng) -> PureState:
    return PureState.from_amplitudes(rng.standard_normal(3))
