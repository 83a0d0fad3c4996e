from kszl.exactcore.field import (
    QQ,
    FieldElement,
    FieldSpec,
    field_inverse,
    format_scalar,
    parse_scalar,
)
from kszl.exactcore.linalg import (
    Echelon,
    ExactMatrix,
    echelonize,
    left_kernel,
    nullspace,
    rank,
    rref,
    solve_membership,
)

__all__ = [
    "QQ",
    "FieldElement",
    "FieldSpec",
    "field_inverse",
    "format_scalar",
    "parse_scalar",
    "Echelon",
    "ExactMatrix",
    "echelonize",
    "left_kernel",
    "nullspace",
    "rank",
    "rref",
    "solve_membership",
]
