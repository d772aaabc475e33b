import math
from dataclasses import dataclass

import numpy as np

from ..exceptions import RegimeViolation, ValidationError
from ..plant.dynamics import plant_rhs_dense
from ..sim.integrator import rk4_step, steps_covering

NORM_TOL = 1e-9
MIN_SEPARATION = 20.0


@dataclass(frozen=True)
class LabFrameParams:
    """Three-level system driven by one field A(t) through dipole couplings μ12, μ23."""

    energies: tuple[float, float, float] = (0.0, 10.0, 25.0)
    a_bar12: float = 0.2
    a_bar23: float = 0.2
    mu12: float = 1.0
    mu23: float = 1.0

    def __post_init__(self):
        energies = tuple(float(e) for e in self.energies)
        if len(energies) != 3 or not all(math.isfinite(e) for e in energies):
            raise ValidationError(f"labframe.energies needs 3 finite values, got {energies}.")
        object.__setattr__(self, "energies", energies)
        w12, w23 = self.gaps
        if w12 == 0.0 or w23 == 0.0:
            raise ValidationError("labframe.energies must be distinct.")
        if math.isclose(w12, w23, rel_tol=1e-12):
            raise ValidationError(
                f"labframe needs |E2-E1| != |E3-E2|, both are {w12!r}."
            )
        for name in ("a_bar12", "a_bar23", "mu12", "mu23"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"labframe.{name} must be finite.")

    @property
    def gaps(self) -> tuple[float, float]:
        e1, e2, e3 = self.energies
        return abs(e2 - e1), abs(e3 - e2)

    @property
    def omega12(self) -> float:
        return self.a_bar12 * self.mu12 / 2.0

    @property
    def omega23(self) -> float:
        return self.a_bar23 * self.mu23 / 2.0

    def separation(self) -> float:
        """Smallest transition frequency over the largest Rabi rate."""
        rabi = max(abs(self.omega12), abs(self.omega23))
        return math.inf if rabi == 0.0 else min(self.gaps) / rabi

    def halved(self) -> "LabFrameParams":
        return LabFrameParams(
            energies=self.energies,
            a_bar12=self.a_bar12 / 2.0,
            a_bar23=self.a_bar23 / 2.0,
            mu12=self.mu12,
            mu23=self.mu23,
        )


@dataclass(frozen=True, eq=False)
class ComplexState3:
    amplitudes: np.ndarray

    def __post_init__(self):
        psi = np.asarray(self.amplitudes, dtype=complex).reshape(3)
        norm = float(np.linalg.norm(psi))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"wave function needs unit norm, got {norm!r}.")
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)

    @classmethod
    def basis(cls, k: int) -> "ComplexState3":
        psi = np.zeros(3, dtype=complex)
        psi[k - 1] = 1.0
        return cls(psi)

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def _hamiltonians(lp: LabFrameParams) -> tuple[np.ndarray, np.ndarray]:
    h0 = np.diag(np.asarray(lp.energies, dtype=complex))
    h1 = np.zeros((3, 3), dtype=complex)
    h1[0, 1] = h1[1, 0] = lp.mu12
    h1[1, 2] = h1[2, 1] = lp.mu23
    return h0, h1


def labframe_compare(
    lp: LabFrameParams,
    u12: float,
    u23: float,
    horizon: float | None = None,
    psi0_level: int = 1,
) -> float:
    """Sup over ``horizon`` of the population gap between the driven Schrödinger
    equation and the rotating-wave model.

    ``horizon`` defaults to one Rabi period of the 1-2 transition. Populations are
    frame independent, so the lab-frame state is compared directly.
    """
    if lp.separation() < MIN_SEPARATION:
        raise RegimeViolation(
            f"transition frequencies are only {lp.separation():.3g} times the Rabi "
            f"rates; the rotating-wave model needs at least {MIN_SEPARATION:g}."
        )
    if horizon is None:
        horizon = 2.0 * math.pi / abs(lp.omega12) if lp.omega12 else 1.0
    if not horizon > 0.0:
        raise ValueError(f"horizon must be > 0, got {horizon!r}.")

    w12, w23 = lp.gaps
    n, dt = steps_covering(horizon, 1.0 / (100.0 * min(w12, w23)))
    h0, h1 = _hamiltonians(lp)

    def schrodinger(t: float, psi: np.ndarray) -> np.ndarray:
        field = u12 * lp.a_bar12 * math.sin(w12 * t) + u23 * lp.a_bar23 * math.sin(
            w23 * t
        )
        return -1j * ((h0 + field * h1) @ psi)

    def model(t: float, x: np.ndarray) -> np.ndarray:
        return plant_rhs_dense(
            x.reshape(3, 3), u12, u23, lp.omega12, lp.omega23
        ).ravel()

    psi = np.array(ComplexState3.basis(psi0_level).amplitudes)
    rho = np.zeros((3, 3))
    rho[psi0_level - 1, psi0_level - 1] = 1.0
    rho = rho.ravel()

    gap = 0.0
    for i in range(n):
        t = i * dt
        psi = rk4_step(schrodinger, psi, t, dt)
        rho = rk4_step(model, rho, t, dt)
        gap = max(gap, float(np.max(np.abs(np.abs(psi) ** 2 - rho[[0, 4, 8]]))))
    return gap
