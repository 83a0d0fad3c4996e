from kszl.presentation.dsl import (
    format_linear,
    format_relation,
    parse_file,
    parse_map,
    parse_presentation,
    print_map,
    print_presentation,
)
from kszl.presentation.model import (
    GeneratorMap,
    QuadraticPresentation,
    TwistSpec,
    diagonal_map,
    fresh_name,
    identity_map,
    minus_one,
    scalar_map,
)

__all__ = [
    "format_linear",
    "format_relation",
    "parse_file",
    "parse_map",
    "parse_presentation",
    "print_map",
    "print_presentation",
    "GeneratorMap",
    "QuadraticPresentation",
    "TwistSpec",
    "diagonal_map",
    "fresh_name",
    "identity_map",
    "minus_one",
    "scalar_map",
]
