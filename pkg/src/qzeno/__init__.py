"""Two-qubit quantum Zeno dynamics with threshold (J) measurements."""
from .core import (
    KET_00,
    KET_10,
    PHASE_FLIP,
    PSI_MINUS,
    PSI_PLUS,
    analytic_m11,
    auto_theta,
    bell_preparation,
    build_w,
    intelligent_evolution,
    matrix_power,
    recurrence_step,
    rotation,
    success_probability,
)
from .errors import ContractError, DegenerateStateError, DimensionError, ZenoError
from .sampling import RngSeed

__version__ = "0.1.0"
