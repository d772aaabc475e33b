from .gains import Gains12, Gains23
from .base import (  # isort: skip
    Observer12State,
    Observer23State,
    innovation,
    local_convergence_hypothesis,
)
from .obs12 import obs12_rhs  # isort: skip
from .obs23 import demodulation_factor, frame_ops, obs23_rhs  # isort: skip
