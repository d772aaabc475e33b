from .base import (  # isort: skip
    P1,
    P2,
    P3,
    SIGMA12,
    SIGMA13,
    SIGMA23,
    SIGMA_X12,
    SIGMA_X23,
    SIGMA_Z12,
    SIGMA_Z23,
    Matrix3,
    OperatorKind,
    RealSkew3,
    RealSym3,
    anticommutator,
    build_operator,
    commutator,
    tangent_gain,
    trace_prod,
)
from .rotation import (  # isort: skip
    Rotation12,
    from_rotating_frame,
    relabel_levels,
    rot12,
    to_rotating_frame,
)
from .projector import (  # isort: skip
    TOL_DEGENERATE,
    PureState,
    dominant_eigen,
    fidelity,
    nearest_projector,
    symmetric_eigenvalues,
)
