import functools
import math

import numpy as np

from .params import NoiseSpec


def window_index(spec: NoiseSpec, t: float) -> int:
    # the small offset keeps t = k·hold_interval inside window k despite rounding
    return int(math.floor(t / spec.hold_interval + 1e-9))


@functools.lru_cache(maxsize=256)
def _standard_draws(seed: int, window: int) -> tuple[float, float, float]:
    rng = np.random.default_rng([int(seed), int(window) & 0xFFFFFFFFFFFFFFFF])
    nu = rng.standard_normal(3)
    return float(nu[0]), float(nu[1]), float(nu[2])


def noise_draws(spec: NoiseSpec, t: float) -> tuple[float, float, float]:
    """(ν_y, ν_u12, ν_u23) held constant over the hold window containing ``t``."""
    if spec.is_silent:
        return 0.0, 0.0, 0.0
    z_y, z_12, z_23 = _standard_draws(spec.seed, window_index(spec, t))
    return spec.output_std * z_y, spec.input_std * z_12, spec.input_std * z_23


def apply_noise(
    spec: NoiseSpec | None, t: float, clean: tuple[float, float, float]
) -> tuple[float, float, float]:
    """(y, u12, u23) → (y_meas, u12_actual, u23_actual)."""
    y, u12, u23 = clean
    if spec is None:
        return y, u12, u23
    nu_y, nu_12, nu_23 = noise_draws(spec, t)
    return y + nu_y, u12 + nu_12, u23 + nu_23
