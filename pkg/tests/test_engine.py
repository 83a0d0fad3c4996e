import random
from fractions import Fraction as F

import pytest

from oracles import NaiveQuotient
from kszl.engine import HilbertPrefix, hilbert, multiply, normal_form, truncate
from kszl.errors import BudgetExceeded, DegreeOverflow
from kszl.presentation import QuadraticPresentation, parse_presentation

SKEW = parse_presentation("algebra S over QQ { gens x, y; rels x*y - 2*y*x; }")
FREE = parse_presentation("algebra F over QQ { gens x, y; }")
SKEW_DUAL = parse_presentation("algebra D over QQ { gens x, y; rels x*x, 2*x*y + y*x, y*y; }")
K = parse_presentation("algebra K over QQ { gens x, y, z; rels x*y - 2*y*x, y*z - 3*z*y, z*x - 5*x*z; }")
K_DUAL = parse_presentation(
    "algebra KD over QQ { gens x, y, z; rels 2*x*y + y*x, 3*y*z + z*y, 5*z*x + x*z, x*x, y*y, z*z; }"
)


def oracle_for(P, N):
    n = P.n
    return NaiveQuotient(n, [{divmod(c, n): v for c, v in r.items()} for r in P.sparse_relations()], N)


@pytest.mark.parametrize("P,N,dims", [
    (SKEW, 4, [1, 2, 3, 4, 5]),
    (FREE, 3, [1, 2, 4, 8]),
    (SKEW_DUAL, 3, [1, 2, 1, 0]),
    (K, 5, [1, 3, 6, 10, 15, 21]),
    (K_DUAL, 4, [1, 3, 3, 1, 0]),
])
def test_dims(P, N, dims):
    assert truncate(P, N).dims == dims
    assert oracle_for(P, N).dims() == dims


def test_hilbert_prefix_type():
    h = hilbert(truncate(SKEW, 4))
    assert isinstance(h, HilbertPrefix) and h[0] == 1
    assert list(HilbertPrefix([1, 1, 1]).times_one_plus_t()) == [1, 2, 2]


def test_normal_form_of_xy_in_skew_plane():
    T = truncate(SKEW, 3)
    # lexicographically smallest word is the pivot, so xy is rewritten
    assert normal_form(T, {(0, 1): F(1)}) == {(1, 0): F(2)}
    assert normal_form(T, {(1, 0): F(1)}) == {(1, 0): F(1)}
    assert normal_form(T, {(0, 1): F(1), (1, 0): F(-2)}) == {}


def test_multiply_and_unit():
    T = truncate(SKEW, 4)
    assert multiply(T, {(0,): F(1)}, {(1,): F(1)}) == {(1, 0): F(2)}
    a = {(1, 0, 0): F(3)}
    assert multiply(T, {(): F(1)}, a) == normal_form(T, a) == multiply(T, a, {(): F(1)})
    with pytest.raises(DegreeOverflow):
        multiply(T, {(0, 0, 0): F(1)}, {(0, 0): F(1)})


def test_budget():
    with pytest.raises(BudgetExceeded):
        truncate(FREE, 25)
    truncate(FREE, 10, word_budget=2 ** 10)


def test_normal_forms_agree_with_oracle_on_random_algebras():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.choice((2, 3))
        rels = tuple({c: F(rng.choice((-3, -1, 1, 2))) for c in rng.sample(range(n * n), rng.randint(1, 3))}
                     for _ in range(rng.randint(1, 4)))
        P = QuadraticPresentation(tuple("xyz"[:n]), rels)
        N = 5 if n == 2 else 4
        T, Q = truncate(P, N), oracle_for(P, N)
        assert T.dims == Q.dims()
        for d in range(N + 1):
            for w in Q.words[d]:
                assert T.to_words(T.word_normal_form(w), d) == Q.normal_form(w)


@pytest.mark.parametrize("P", [SKEW, K, SKEW_DUAL, K_DUAL,
                               parse_presentation("algebra J over QQ { gens x, y; rels x*y - y*x - x^2; }")])
def test_associativity_exhaustive(P):
    T = truncate(P, 6 if P.n == 2 else 5)
    assert T.associativity_failures() == []


def test_normal_form_is_idempotent_and_linear():
    T = truncate(K, 4)
    rng = random.Random(3)
    for _ in range(30):
        a = {tuple(rng.randrange(3) for _ in range(3)): F(rng.randint(-4, 4)) for _ in range(4)}
        b = {tuple(rng.randrange(3) for _ in range(3)): F(rng.randint(-4, 4)) for _ in range(4)}
        na, nb = normal_form(T, a), normal_form(T, b)
        assert normal_form(T, na) == na
        s = dict(a)
        for w, c in b.items():
            s[w] = s.get(w, 0) + 2 * c
        combo = dict(na)
        for w, c in nb.items():
            combo[w] = combo.get(w, 0) + 2 * c
        assert normal_form(T, s) == {w: c for w, c in combo.items() if c}


def test_socle_and_finiteness():
    T = truncate(K_DUAL, 5)
    assert T.is_finite_dimensional() and T.socle_degree() == 3
    assert truncate(K, 5).socle_degree() is None
