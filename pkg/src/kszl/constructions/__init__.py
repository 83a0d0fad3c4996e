from kszl.constructions.dual import quadratic_dual
from kszl.constructions.extensions import (
    HatTwistReport,
    PairFormReport,
    check_pair_form_isomorphism,
    hat_automorphism,
    hat_twist_identity,
    ore_extension,
    pair_form_presentation,
    square_zero_extension,
    trivial_extension,
    zhang_twist,
)
from kszl.constructions.localization import (
    FiniteAlgebraTable,
    PsiReport,
    SquareZeroDualReport,
    dual_of_square_zero_extension_check,
    localize_z2_degree0,
)

__all__ = [
    "quadratic_dual",
    "HatTwistReport",
    "PairFormReport",
    "check_pair_form_isomorphism",
    "hat_automorphism",
    "hat_twist_identity",
    "ore_extension",
    "pair_form_presentation",
    "square_zero_extension",
    "trivial_extension",
    "zhang_twist",
    "FiniteAlgebraTable",
    "PsiReport",
    "SquareZeroDualReport",
    "dual_of_square_zero_extension_check",
    "localize_z2_degree0",
]
