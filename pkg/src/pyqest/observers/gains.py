import math
from dataclasses import dataclass

from ..exceptions import ValidationError


def _check(
    section: str,
    name: str,
    value: float,
    low: float,
    high: float | None,
    closed_low: bool = False,
    closed_high: bool = False,
) -> None:
    ok = math.isfinite(value) and (value >= low if closed_low else value > low)
    if high is not None:
        ok = ok and (value <= high if closed_high else value < high)
    if not ok:
        left = "[" if closed_low else "("
        right = "]" if closed_high else ")"
        bound = f"{left}{low}, {high if high is not None else 'inf'}{right}"
        raise ValidationError(f"{section}.{name} must lie in {bound}, got {value!r}.")


@dataclass(frozen=True)
class Gains12:
    gamma_big: float = 4.0
    gamma_small: float = 1.0
    epsilon: float = 1.0 / 3.0

    def __post_init__(self):
        _check("gains12", "gamma_big", self.gamma_big, 0.0, None)
        # gamma_small = 0 freezes the parameter estimate
        _check("gains12", "gamma_small", self.gamma_small, 0.0, None, closed_low=True)
        _check("gains12", "epsilon", self.epsilon, 0.0, 1.0)


@dataclass(frozen=True)
class Gains23:
    gamma_big: float = 4.0
    gamma_small: float = 1.0
    epsilon: float = 1.0 / 3.0
    eta: float = 1.0 / 3.0
    omega12_known: float | None = None

    def __post_init__(self):
        _check("gains23", "gamma_big", self.gamma_big, 0.0, None)
        _check("gains23", "gamma_small", self.gamma_small, 0.0, None, closed_low=True)
        _check("gains23", "epsilon", self.epsilon, 0.0, 1.0)
        # eta = 0 switches the 2-3 drive off
        _check("gains23", "eta", self.eta, 0.0, 1.0, closed_low=True, closed_high=True)
        if self.omega12_known is not None:
            _check("gains23", "omega12_known", abs(self.omega12_known), 0.0, None)

    def require_omega12(self) -> float:
        if self.omega12_known is None:
            raise ValidationError(
                "gains23.omega12_known is unset; run phase 1 first or set it."
            )
        return self.omega12_known
