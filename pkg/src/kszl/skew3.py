"""Skew polynomial algebras k<x,y,z>/(xy - a1 yx, yz - a2 zy, zx - a3 xz).

Three closed-form comparisons between two parameter tuples a and b:

* isomorphic: b lies in the six-element orbit of a under cyclic rotation
  and the order-reversing inversion;
* stable_cm_equivalent: (b1^2, b2^2, b3^2, b1 b2 b3) lies in the matching
  six-element set built from a (equivalently, the Nakayama twists of the two
  algebras are isomorphic);
* graded_morita: b1 b2 b3 = (a1 a2 a3)^{+1 or -1}.

Each condition implies the next; :class:`SkewVerdict` refuses to exist otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from kszl.constructions.extensions import zhang_twist
from kszl.errors import InputError, ZeroParameter
from kszl.exactcore import QQ, parse_scalar
from kszl.morphisms import invert, nakayama_regular
from kszl.presentation import QuadraticPresentation

ORBIT_LABELS = (
    "(a1,a2,a3)",
    "(a3,a1,a2)",
    "(a2,a3,a1)",
    "(a1^-1,a3^-1,a2^-1)",
    "(a3^-1,a2^-1,a1^-1)",
    "(a2^-1,a1^-1,a3^-1)",
)


@dataclass(frozen=True)
class SkewParams:
    alpha1: object
    alpha2: object
    alpha3: object
    field: object = QQ

    def __post_init__(self):
        vals = tuple(self.field(a) for a in (self.alpha1, self.alpha2, self.alpha3))
        if not all(vals):
            raise ZeroParameter(f"skew parameters must be nonzero, got {vals}")
        object.__setattr__(self, "alpha1", vals[0])
        object.__setattr__(self, "alpha2", vals[1])
        object.__setattr__(self, "alpha3", vals[2])

    @classmethod
    def parse(cls, text, field=QQ):
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise InputError(f"expected three comma-separated parameters, got {text!r}")
        return cls(*(parse_scalar(p, field) for p in parts), field=field)

    @property
    def values(self):
        return (self.alpha1, self.alpha2, self.alpha3)

    @property
    def product(self):
        a1, a2, a3 = self.values
        return a1 * a2 * a3

    def __str__(self):
        return ",".join(str(a) for a in self.values)


def orbit(t):
    """The six tuples giving algebras isomorphic to the one with parameters t."""
    a1, a2, a3 = t
    return (
        (a1, a2, a3),
        (a3, a1, a2),
        (a2, a3, a1),
        (1 / a1, 1 / a3, 1 / a2),
        (1 / a3, 1 / a2, 1 / a1),
        (1 / a2, 1 / a1, 1 / a3),
    )


def square_product_set(t):
    """The six (square, square, square, product) tuples for stable equivalence."""
    p = t[0] * t[1] * t[2]
    return tuple(
        (o[0] ** 2, o[1] ** 2, o[2] ** 2, p if k < 3 else 1 / p)
        for k, o in enumerate(orbit(t))
    )


def nakayama_twist_parameters(t):
    """Parameters of the twist by the inverse Nakayama automorphism."""
    a1, a2, a3 = t
    return (a2 * a3 / a1, a1 * a3 / a2, a1 * a2 / a3)


@dataclass(frozen=True)
class SkewVerdict:
    isomorphic: bool
    stable_cm_equivalent: bool
    graded_morita: bool
    iso_witness: str = None
    cm_witness: str = None
    morita_witness: str = None

    def __post_init__(self):
        if self.isomorphic and not self.stable_cm_equivalent:
            raise AssertionError("isomorphic but not stably equivalent")
        if self.stable_cm_equivalent and not self.graded_morita:
            raise AssertionError("stably equivalent but not graded Morita equivalent")

    def triple(self):
        return (self.isomorphic, self.stable_cm_equivalent, self.graded_morita)

    def to_json(self):
        return {
            "isomorphic": self.isomorphic,
            "stable_cm_equivalent": self.stable_cm_equivalent,
            "graded_morita": self.graded_morita,
            "witness": {
                "isomorphic": self.iso_witness,
                "stable_cm_equivalent": self.cm_witness,
                "graded_morita": self.morita_witness,
            },
        }


def _first_match(target, candidates, labels):
    for cand, label in zip(candidates, labels):
        if tuple(target) == tuple(cand):
            return label
    return None


def classify(a, b):
    alphas, betas = a.values, b.values
    iso = _first_match(betas, orbit(alphas), ORBIT_LABELS)
    sq = tuple(x ** 2 for x in betas) + (b.product,)
    cm = _first_match(sq, square_product_set(alphas), ORBIT_LABELS)
    morita = None
    if b.product == a.product:
        morita = "product"
    elif b.product == 1 / a.product:
        morita = "inverse product"
    return SkewVerdict(iso is not None, cm is not None, morita is not None, iso, cm, morita)


def build_algebra(p, name="S"):
    x, y, z = 0, 1, 2
    a1, a2, a3 = p.values
    one = p.field.one
    rels = (
        {3 * x + y: one, 3 * y + x: -a1},
        {3 * y + z: one, 3 * z + y: -a2},
        {3 * z + x: one, 3 * x + z: -a3},
    )
    return QuadraticPresentation(("x", "y", "z"), rels, p.field, name=name)


def relation_coefficients(P):
    """(c1, c2, c3) with xy - c1 yx, yz - c2 zy, zx - c3 xz in the relation space, or None."""
    out = []
    for w1, w2 in ((1, 3), (5, 7), (6, 2)):
        c = None
        for row in P.sparse_relations():
            if w1 in row:
                c = -row.get(w2, 0) / row[w1]
                break
        if c is None or not c or not P.contains({w1: P.field.one, w2: -c}):
            return None
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class CrossReport:
    closed_form: SkewVerdict
    twisted_a: tuple
    twisted_b: tuple
    pipeline_stable_cm: bool
    pipeline_witness: str

    @property
    def agree(self):
        return self.pipeline_stable_cm == self.closed_form.stable_cm_equivalent


def twisted_parameters(p, word_budget=None):
    """Build the algebra, twist it by nu^-1 and read back its three coefficients."""
    S = build_algebra(p)
    nu = nakayama_regular(S, 3, word_budget)
    tw = zhang_twist(S, invert(nu))
    coeffs = relation_coefficients(tw)
    if coeffs is None:
        raise AssertionError("twisted algebra is not a skew polynomial algebra")
    return coeffs


def cross_validate(a, b, N=4, word_budget=None):
    """Recompute stable equivalence through the Nakayama twist pipeline.

    ``N`` is accepted for interface symmetry; the dual algebra vanishes in
    degree 4, so that is the only truncation the pipeline needs.
    """
    ta = twisted_parameters(a, word_budget)
    tb = twisted_parameters(b, word_budget)
    witness = _first_match(tb, orbit(ta), ORBIT_LABELS)
    return CrossReport(classify(a, b), ta, tb, witness is not None, witness)


SMALL_VALUES = tuple(
    Fraction(s * n, d) for s in (1, -1) for n, d in ((1, 1), (2, 1), (3, 1), (1, 2), (1, 3), (2, 3), (3, 2))
)


def random_params(rng, values=SMALL_VALUES):
    return SkewParams(rng.choice(values), rng.choice(values), rng.choice(values))


@dataclass(frozen=True)
class SearchResult:
    mode: str
    pairs: tuple
    trials: int
    inconclusive: bool


def _candidate(mode, rng):
    a = random_params(rng)
    if mode == "cm_not_iso":
        # flip the signs of two entries of an orbit element: squares and product survive
        o = list(rng.choice(orbit(a.values)))
        i, j = rng.sample(range(3), 2)
        o[i], o[j] = -o[i], -o[j]
        return a, SkewParams(*o)
    b1, b2 = rng.choice(SMALL_VALUES), rng.choice(SMALL_VALUES)
    target = a.product if rng.random() < 0.5 else 1 / a.product
    return a, SkewParams(b1, b2, target / (b1 * b2))


def find_counterexamples(mode, budget=10_000, seed=0, limit=5):
    """Pairs where the weaker condition holds but the stronger fails.

    ``cm_not_iso``: stable equivalence without isomorphism;
    ``morita_not_cm``: graded Morita equivalence without stable equivalence.
    """
    if mode not in ("cm_not_iso", "morita_not_cm"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    found = []
    trials = 0
    while trials < budget and len(found) < limit:
        trials += 1
        a, b = _candidate(mode, rng)
        v = classify(a, b)
        if mode == "cm_not_iso" and v.stable_cm_equivalent and not v.isomorphic:
            found.append((a, b))
        elif mode == "morita_not_cm" and v.graded_morita and not v.stable_cm_equivalent:
            found.append((a, b))
    return SearchResult(mode, tuple(found), trials, not found)


def random_pairs(count, seed=0):
    """Seeded pairs mixing unrelated tuples, orbit images, sign flips and matched products.

    Plain random pairs are almost never related, so a suite built only from
    them would never exercise the positive branches.
    """
    rng = random.Random(seed)
    out = []
    for k in range(count):
        kind = k % 4
        if kind == 0:
            out.append((random_params(rng), random_params(rng)))
        elif kind == 1:
            a = random_params(rng)
            out.append((a, SkewParams(*rng.choice(orbit(a.values)))))
        else:
            out.append(_candidate("cm_not_iso" if kind == 2 else "morita_not_cm", rng))
    return out
