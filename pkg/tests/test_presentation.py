import random
from fractions import Fraction as F

import pytest

from kszl.errors import (
    DSLSyntaxError,
    InhomogeneousRelation,
    InputError,
    NonLinearImage,
    NonQuadraticRelation,
    UnknownAlgebra,
    UnknownGenerator,
)
from kszl.exactcore import ExactMatrix, FieldSpec
from kszl.presentation import (
    QuadraticPresentation,
    TwistSpec,
    identity_map,
    parse_file,
    parse_map,
    parse_presentation,
    print_map,
    print_presentation,
)

SKEW = "algebra S over QQ { gens x, y; rels x*y - 2*y*x; }"


def test_parse_skew_plane():
    P = parse_presentation(SKEW)
    assert P.n == 2 and P.dim_relations == 1
    assert P.sparse_relations() == [{1: F(1), 2: F(-2)}]


def test_parse_free_algebra():
    P = parse_presentation("algebra F over QQ { gens x, y; }")
    assert P.dim_relations == 0
    assert "rels" not in print_presentation(P)


def test_cubic_relation_is_rejected():
    with pytest.raises(NonQuadraticRelation):
        parse_presentation("algebra B over QQ { gens x, y; rels x*y*x; }")


def test_mixed_degrees_are_rejected():
    with pytest.raises(InhomogeneousRelation):
        parse_presentation("algebra B over QQ { gens x, y; rels x*y - x; }")


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        parse_presentation("algebra B over QQ { gens x, y; rels x*z; }")


def test_syntax_error_carries_position():
    with pytest.raises(DSLSyntaxError) as exc:
        parse_presentation("algebra B over QQ {\n gens x, y\n rels x*y; }")
    assert exc.value.line == 3


def test_comments_and_whitespace():
    P = parse_presentation("# header\nalgebra S over QQ {\n  gens x,y;  # names\n rels x*y-2*y*x ; }")
    assert P == parse_presentation(SKEW)


def test_same_span_compares_equal():
    a = parse_presentation("algebra A over QQ { gens x, y; rels x*x, 2*x*y + y*x, y*y; }")
    b = parse_presentation("algebra A over QQ { gens x, y; rels x*x + y*y, y*y, x*y + (1/2)*y*x, x*x; }")
    assert a == b and a.dim_relations == 3


def test_parse_maps():
    algebras, _ = parse_file(SKEW)
    f = parse_map("map nu_inv : S -> S { x -> 2*x; y -> (1/2)*y; }", algebras)
    assert f.matrix == ExactMatrix.from_rows([[2, 0], [0, F(1, 2)]])
    g = parse_map("map id : S -> S { x -> x; y -> y; }", algebras)
    assert g.matrix.is_identity()
    with pytest.raises(NonLinearImage):
        parse_map("map f : S -> S { x -> x*y; y -> y; }", algebras)
    with pytest.raises(UnknownAlgebra):
        parse_map("map f : S -> T { x -> x; y -> y; }", algebras)


def test_maps_are_not_verified_by_the_parser():
    algebras, _ = parse_file(SKEW)
    f = parse_map("map swap : S -> S { x -> y; y -> x; }", algebras)
    assert not f.verified


def test_extension_field_presentation_round_trip():
    text = "algebra K over QQ adjoin t mod t^2 + t + 1 { gens x, y; rels x*y - t*y*x; }"
    P = parse_presentation(text)
    assert P.field == FieldSpec((1, 1, 1))
    assert parse_presentation(print_presentation(P)) == P


def test_twist_spec_shift_is_fixed():
    P = parse_presentation(SKEW)
    assert TwistSpec(identity_map(P)).shift == 1
    with pytest.raises(InputError):
        TwistSpec(identity_map(P), shift=2)


def random_presentation(rng):
    n = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, n * n)):
        cols = rng.sample(range(n * n), rng.randint(1, min(3, n * n)))
        rels.append({c: F(rng.randint(-5, 5), rng.randint(1, 4)) for c in cols})
    return QuadraticPresentation(tuple("xyz"[:n]), tuple(rels), name="R")


def test_print_parse_round_trip_on_random_corpus():
    rng = random.Random(5)
    for _ in range(50):
        P = random_presentation(rng)
        Q = parse_presentation(print_presentation(P))
        assert Q == P and Q.field == P.field and Q.generators == P.generators


def test_map_round_trip():
    algebras, maps = parse_file(SKEW + "\nmap g : S -> S { x -> 2*x - (3/4)*y; y -> y; }")
    f = maps["g"]
    again = parse_map(print_map(f), algebras)
    assert again.matrix == f.matrix
