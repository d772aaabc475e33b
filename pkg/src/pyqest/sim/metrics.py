from dataclasses import asdict, dataclass

import numpy as np

from ..exceptions import EmptySeries


def convergence_time(
    times: np.ndarray, values: np.ndarray, target: float, band: float
) -> float | None:
    """Earliest sample time after which ``values`` stays within ``band`` of ``target``.

    ``band`` is relative to ``|target|``; returns None when the last sample is
    still outside the band.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size == 0:
        raise EmptySeries("convergence_time needs at least one sample.")
    if times.shape != values.shape:
        raise ValueError("times and values must have the same shape.")
    if not band > 0.0:
        raise ValueError(f"band must be > 0, got {band}.")
    if target == 0.0:
        raise ValueError("target must be nonzero for a relative band.")

    outside = ~(np.abs(values - target) / abs(target) <= band)
    if not outside.any():
        return float(times[0])
    last_out = int(np.flatnonzero(outside)[-1])
    if last_out == times.size - 1:
        return None
    return float(times[last_out + 1])


def relative_error(estimate: float, target: float) -> float:
    return abs(estimate - target) / abs(target)


@dataclass(frozen=True)
class EstimationResult:
    omega12_hat_final: float
    omega23_hat_final: float
    rel_err12: float
    rel_err23: float
    tconv12: float | None
    tconv23: float | None
    seed: int
    noisy: bool = False
    status: str = "ok"

    @classmethod
    def failed(cls, seed: int, noisy: bool, reason: str) -> "EstimationResult":
        nan = float("nan")
        return cls(nan, nan, nan, nan, None, None, seed, noisy, f"failed: {reason}")

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> dict:
        return asdict(self)
