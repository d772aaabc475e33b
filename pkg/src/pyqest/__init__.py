from .exceptions import (  # isort: skip
    ConfigError,
    DegenerateState,
    EmptySeries,
    IndexOutOfRange,
    InvalidPair,
    NonFiniteState,
    ParseError,
    PyqestError,
    RegimeViolation,
    ValidationError,
    WindowTooShort,
)
from .qmat import PureState, RealSkew3, RealSym3  # isort: skip
from .plant import NoiseSpec, PlantParams  # isort: skip
from .observers import Gains12, Gains23  # isort: skip
from .sim import (  # isort: skip
    EstimationResult,
    InitialConditions,
    Scenario,
    SimConfig,
    Trajectory,
    TwoStepEstimation,
    monte_carlo,
    run_phase1,
    run_phase2,
    run_two_step,
)

__version__ = "0.1.0"
