from .integrator import integrate, n_steps_for, rk4_step
from .config import Handoff, InitialConditions, Scenario, SimConfig  # isort: skip
from .trajectory import COLUMNS, SCHEMA_VERSION, Trajectory  # isort: skip
from .metrics import EstimationResult, convergence_time, relative_error  # isort: skip
from .pipeline import (  # isort: skip
    TwoStepEstimation,
    handoff_sensitivity,
    run_phase1,
    run_phase2,
    run_two_step,
)
from .montecarlo import monte_carlo, results_frame, summarize  # isort: skip
