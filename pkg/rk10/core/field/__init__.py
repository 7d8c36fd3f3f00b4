from .basis import BASIS_LABELS, DIMENSION, STRUCTURE_CONSTANTS, basis_values
from .element import (
    FieldElement,
    ZERO,
    UNIT,
    ROOT3,
    ROOT7,
    ROOT21,
    ALPHA_ELEMENT,
    BETA_ELEMENT,
    GUARD_DIGITS,
)
from .arithmetic import (
    Arithmetic,
    ExactArithmetic,
    NumericArithmetic,
    arithmetic_for,
    DEFAULT_DIGITS,
)
from .literals import (
    decode_nine_integers,
    parse_field_literal,
    parse_rational,
    parse_xi_block,
)
from .linalg import solve_linear, solve_fractions, EchelonBasis, span_basis
from .identify import identify, relation_height

__all__ = [
    "BASIS_LABELS",
    "DIMENSION",
    "STRUCTURE_CONSTANTS",
    "basis_values",
    "FieldElement",
    "ZERO",
    "UNIT",
    "ROOT3",
    "ROOT7",
    "ROOT21",
    "ALPHA_ELEMENT",
    "BETA_ELEMENT",
    "GUARD_DIGITS",
    "Arithmetic",
    "ExactArithmetic",
    "NumericArithmetic",
    "arithmetic_for",
    "DEFAULT_DIGITS",
    "decode_nine_integers",
    "parse_field_literal",
    "parse_rational",
    "parse_xi_block",
    "solve_linear",
    "solve_fractions",
    "EchelonBasis",
    "span_basis",
    "identify",
    "relation_height",
]
