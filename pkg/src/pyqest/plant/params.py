import math
from dataclasses import dataclass
from enum import Enum

from ..exceptions import ValidationError


@dataclass(frozen=True)
class PlantParams:
    omega12: float = 1.0
    omega23: float = 0.8

    def __post_init__(self):
        for name in ("omega12", "omega23"):
            value = getattr(self, name)
            if not math.isfinite(value) or value == 0.0:
                raise ValidationError(
                    f"plant.{name} must be finite and nonzero, got {value!r}."
                )


class Phase(str, Enum):
    PHASE1 = "phase1"
    PHASE2 = "phase2"


@dataclass(frozen=True)
class ControlLaw:
    phase: Phase = Phase.PHASE1
    eta: float = 1.0 / 3.0
    omega12_for_theta: float = 0.0
    t_phase_start: float = 0.0
    theta0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phase", Phase(self.phase))
        if self.phase == Phase.PHASE2 and not 0.0 <= self.eta <= 1.0:
            raise ValidationError(f"eta must lie in [0, 1], got {self.eta!r}.")

    @classmethod
    def phase1(cls) -> "ControlLaw":
        return cls(phase=Phase.PHASE1)

    @classmethod
    def phase2(
        cls,
        eta: float,
        omega12_for_theta: float,
        t_phase_start: float,
        theta0: float = 0.0,
    ) -> "ControlLaw":
        return cls(
            phase=Phase.PHASE2,
            eta=eta,
            omega12_for_theta=omega12_for_theta,
            t_phase_start=t_phase_start,
            theta0=theta0,
        )


@dataclass(frozen=True)
class NoiseSpec:
    output_std: float = 0.0
    input_std: float = 0.0
    hold_interval: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if not (self.output_std >= 0.0 and self.input_std >= 0.0):
            raise ValidationError(
                f"noise stds must be >= 0, got output_std={self.output_std!r}, "
                f"input_std={self.input_std!r}."
            )
        if not self.hold_interval > 0.0:
            raise ValidationError(
                f"noise.hold_interval must be > 0, got {self.hold_interval!r}."
            )
        if not 0 <= int(self.seed) < 2**64:
            raise ValidationError("noise.seed must be an unsigned 64-bit integer.")

    @property
    def is_silent(self) -> bool:
        return self.output_std == 0.0 and self.input_std == 0.0
