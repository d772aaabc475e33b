from .params import ControlLaw, NoiseSpec, Phase, PlantParams
from .dynamics import (  # isort: skip
    balanced_theta,
    control_signals,
    output,
    plant_rhs,
    rotating_output,
)
from .noise import apply_noise, noise_draws  # isort: skip
