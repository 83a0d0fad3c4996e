from kszl.morphisms.maps import (
    IsoCertificate,
    apply_to_word,
    compose,
    graded_matrix,
    invert,
    is_well_defined,
    verify_iso,
    verify_map,
)
from kszl.morphisms.frobenius import (
    FrobeniusData,
    frobenius_data,
    nakayama_identity_failures,
    nakayama_regular,
)

__all__ = [
    "IsoCertificate",
    "apply_to_word",
    "compose",
    "graded_matrix",
    "invert",
    "is_well_defined",
    "verify_iso",
    "verify_map",
    "FrobeniusData",
    "frobenius_data",
    "nakayama_identity_failures",
    "nakayama_regular",
]
