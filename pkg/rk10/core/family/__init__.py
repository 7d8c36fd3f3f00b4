from .lobatto import LobattoQuadrature, lobatto6
from .params import FamilyParams, PARAMETER_NAMES, reference_params, to_element
from .constants import (
    ClosureConstants,
    C6Constants,
    ConstantsRow,
    GAMMA_NAMES,
    C6_NAMES,
    constants_block,
    closing_pivot,
    printed_closure_constants,
    printed_c6_constants,
    c6_of,
    symmetric_line_sum,
    symmetric_line_constants,
)
from .construction import (
    FamilyBuilder,
    STAGES,
    ORDER,
    construct,
    closure_constants,
    reference_method,
    script_d,
    weights_of,
    nodes_of,
)
from .derivation import (
    RenormalizedClosing,
    C6Derivation,
    LabelledRow,
    renormalized_closing,
    derive_closing_pivot,
    derive_c6_constants,
    solve_c6,
    constants_block_report,
)

__all__ = [
    "LobattoQuadrature",
    "lobatto6",
    "FamilyParams",
    "PARAMETER_NAMES",
    "reference_params",
    "to_element",
    "ClosureConstants",
    "C6Constants",
    "ConstantsRow",
    "GAMMA_NAMES",
    "C6_NAMES",
    "constants_block",
    "closing_pivot",
    "printed_closure_constants",
    "printed_c6_constants",
    "c6_of",
    "symmetric_line_sum",
    "symmetric_line_constants",
    "FamilyBuilder",
    "STAGES",
    "ORDER",
    "construct",
    "closure_constants",
    "reference_method",
    "script_d",
    "weights_of",
    "nodes_of",
    "RenormalizedClosing",
    "C6Derivation",
    "LabelledRow",
    "renormalized_closing",
    "derive_closing_pivot",
    "derive_c6_constants",
    "solve_c6",
    "constants_block_report",
]
