import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum

from ..exceptions import ValidationError
from ..observers.gains import Gains12, Gains23
from ..plant.params import NoiseSpec, PlantParams
from ..qmat.projector import PureState


class Handoff(str, Enum):
    CONTINUE = "continue"
    RESET = "reset"


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-3
    t1_end: float = 50.0
    t2_end: float = 200.0
    sample_stride: int = 100
    reproject_stride: int = 100
    measurement_period: float | None = None
    handoff: Handoff = Handoff.CONTINUE
    theta0: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "handoff", Handoff(self.handoff))
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValidationError(f"sim.dt must be > 0, got {self.dt!r}.")
        if not 0.0 < self.t1_end < self.t2_end:
            raise ValidationError(
                f"sim needs 0 < t1_end < t2_end, got {self.t1_end!r}, {self.t2_end!r}."
            )
        for name in ("sample_stride", "reproject_stride"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValidationError(f"sim.{name} must be an integer >= 1.")
        if self.measurement_period is not None and not self.measurement_period > 0:
            raise ValidationError(
                f"sim.measurement_period must be > 0, got {self.measurement_period!r}."
            )
        if self.theta0 is not None and not math.isfinite(self.theta0):
            raise ValidationError("sim.theta0 must be finite.")


@dataclass(frozen=True)
class InitialConditions:
    rho0: tuple[float, float, float] = (1.0, 0.0, 0.0)
    rho_hat0: tuple[float, float, float] = (1.0, 0.0, 0.0)
    omega12_hat0: float | None = None
    omega23_hat0: float | None = None

    def __post_init__(self):
        for name in ("rho0", "rho_hat0"):
            value = tuple(float(v) for v in getattr(self, name))
            if len(value) != 3:
                raise ValidationError(f"init.{name} needs 3 amplitudes, got {value}.")
            object.__setattr__(self, name, value)
            PureState.from_amplitudes(value)

    def rho(self) -> PureState:
        return PureState.from_amplitudes(self.rho0)

    def rho_hat(self) -> PureState:
        return PureState.from_amplitudes(self.rho_hat0)

    def omega12_hat(self, p: PlantParams) -> float:
        if self.omega12_hat0 is not None:
            return self.omega12_hat0
        return p.omega12 / 1.5

    def omega23_hat(self, p: PlantParams) -> float:
        if self.omega23_hat0 is not None:
            return self.omega23_hat0
        return 1.5 * p.omega23


@dataclass(frozen=True)
class Scenario:
    plant: PlantParams = field(default_factory=PlantParams)
    gains12: Gains12 = field(default_factory=Gains12)
    gains23: Gains23 = field(default_factory=Gains23)
    noise: NoiseSpec | None = None
    sim: SimConfig = field(default_factory=SimConfig)
    init: InitialConditions = field(default_factory=InitialConditions)

    @property
    def noisy(self) -> bool:
        return self.noise is not None and not self.noise.is_silent

    def with_seed(self, seed: int) -> "Scenario":
        noise = self.noise if self.noise is not None else NoiseSpec()
        return dataclasses.replace(self, noise=dataclasses.replace(noise, seed=seed))

    @property
    def seed(self) -> int:
        return self.noise.seed if self.noise is not None else 0
