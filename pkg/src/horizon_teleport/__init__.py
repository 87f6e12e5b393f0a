"""Teleportation fidelity near a dilaton black hole.

Closed forms for the horizon map on a shared two-qubit X-state, sender-side
amplitude damping and local filtering, the fully entangled fraction and the
resulting teleportation fidelity, each paired with an independent
brute-force construction; plus sweep/preset/plotting machinery and a CLI.
"""

from .channels import (
    FilteredState,
    amplitude_damp,
    amplitude_damp_bruteforce,
    filter_operator,
    local_filter,
)
from .dilaton import (
    DilatonParams,
    ModeCoefficients,
    UnruhMode,
    bob_horizon_transform,
    bob_horizon_transform_bruteforce,
    combined_state,
    combined_state_bruteforce,
    hawking_temperature,
    kruskal_one,
    kruskal_vacuum,
    mode_coefficients,
)
from .errors import (
    ConditionError,
    ConfigError,
    ConventionError,
    DimensionError,
    DomainError,
    EmptyInputError,
    HorizonTeleportError,
    PositivityError,
    RangeError,
    ShapeError,
    TraceError,
    ZeroProbabilityError,
)
from .qstate import (
    StateReport,
    XState,
    is_entangled_x,
    make_x_state,
    matrix_to_x,
    partial_trace,
    validate,
    x_to_matrix,
)
from .sweep import (
    AlphaGrid,
    ResultRow,
    SweepSpec,
    emit_plot,
    figure_preset,
    parse_csv,
    run_sweep,
    spec_from_json,
    write_csv,
    write_json,
)
from .teleport import (
    DeltaAlphaResult,
    FefResult,
    FidelityResult,
    FilterOptimum,
    delta_alpha,
    fef_after_filter,
    fef_after_horizon,
    fef_numeric,
    fef_x_closed,
    optimize_filter,
    singlet_fraction,
    teleport_fidelity,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaGrid",
    "ConditionError",
    "ConfigError",
    "ConventionError",
    "DeltaAlphaResult",
    "DilatonParams",
    "DimensionError",
    "DomainError",
    "EmptyInputError",
    "FefResult",
    "FidelityResult",
    "FilterOptimum",
    "FilteredState",
    "HorizonTeleportError",
    "ModeCoefficients",
    "PositivityError",
    "RangeError",
    "ResultRow",
    "ShapeError",
    "StateReport",
    "SweepSpec",
    "TraceError",
    "UnruhMode",
    "XState",
    "ZeroProbabilityError",
    "amplitude_damp",
    "amplitude_damp_bruteforce",
    "bob_horizon_transform",
    "bob_horizon_transform_bruteforce",
    "combined_state",
    "combined_state_bruteforce",
    "delta_alpha",
    "emit_plot",
    "fef_after_filter",
    "fef_after_horizon",
    "fef_numeric",
    "fef_x_closed",
    "figure_preset",
    "filter_operator",
    "hawking_temperature",
    "is_entangled_x",
    "kruskal_one",
    "kruskal_vacuum",
    "local_filter",
    "make_x_state",
    "matrix_to_x",
    "mode_coefficients",
    "optimize_filter",
    "parse_csv",
    "partial_trace",
    "run_sweep",
    "singlet_fraction",
    "spec_from_json",
    "teleport_fidelity",
    "validate",
    "write_csv",
    "write_json",
    "x_to_matrix",
]
