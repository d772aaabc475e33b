from .averaging import (
    averaged_obs12_rhs,
    averaged_obs23_rhs,
    averaging_gap,
    permuted_equivalence,
)
from .linearized import (  # isort: skip
    LinearizedParams,
    averaged12_jacobian,
    linearized12,
    linearized12_spectrum,
    linearized12_time_constant,
)
from .lyapunov import lyapunov12, max_lyapunov_increase  # isort: skip
from .demodulation import demodulate_populations, predicted_times  # isort: skip
from .labframe import ComplexState3, LabFrameParams, labframe_compare  # isort: skip
from .checks import (  # isort: skip
    AnalysisReport,
    Check,
    averaging_check,
    demodulation_check,
    linearization_check,
    lyapunov_check,
    rwa_check,
)
