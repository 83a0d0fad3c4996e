"""Quadratic presentations A = T(V)/(R) and linear maps between their generators."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from dataclasses import field as dc_field

from kszl.errors import DSLSyntaxError, DimensionMismatch, InputError, NameCollision
from kszl.exactcore import QQ, ExactMatrix, FieldSpec, echelonize

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED = {"algebra", "over", "gens", "rels", "map", "QQ", "adjoin", "mod"}


def _check_names(names, field_spec):
    seen = set()
    for g in names:
        if not NAME_RE.match(g) or g in RESERVED:
            raise DSLSyntaxError(f"invalid generator name {g!r}")
        if g == "t" and not field_spec.is_rational:
            raise NameCollision("'t' names the adjoined field element")
        if g in seen:
            raise NameCollision(f"duplicate generator {g!r}")
        seen.add(g)


@dataclass(frozen=True)
class QuadraticPresentation:
    """Connected graded algebra generated in degree 1 with quadratic relations.

    ``relations`` holds the reduced row echelon basis of R inside V (x) V, the
    word g_i g_j sitting at column ``i * n + j``.  Any spanning set may be
    passed in; it is canonicalized on construction, so two presentations with
    the same generators and the same relation span compare equal.  ``name``
    is a label only and takes no part in equality.
    """

    generators: tuple
    relations: tuple = ()
    field: FieldSpec = QQ
    name: str = dc_field(default="A", compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        _check_names(gens, self.field)
        n = len(gens)
        sparse = []
        for r in self.relations:
            if isinstance(r, dict):
                row = {int(c): self.field(v) for c, v in r.items() if v}
            else:
                if len(r) != n * n:
                    raise DimensionMismatch(f"relation of length {len(r)} for {n} generators")
                row = {c: self.field(v) for c, v in enumerate(r) if v}
            if any(not 0 <= c < n * n for c in row):
                raise DimensionMismatch("relation column out of range")
            sparse.append(row)
        basis, _ = echelonize(sparse)
        zero = self.field.zero
        rels = tuple(tuple(b.get(c, zero) for c in range(n * n)) for b in basis)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", rels)

    @property
    def n(self):
        return len(self.generators)

    @property
    def dim_relations(self):
        return len(self.relations)

    def word_index(self, i, j):
        return i * self.n + j

    def sparse_relations(self):
        return [{c: v for c, v in enumerate(r) if v} for r in self.relations]

    def relation_matrix(self):
        return ExactMatrix(self.relations, self.n * self.n)

    def relation_pivots(self):
        return [next(c for c, v in enumerate(r) if v) for r in self.relations]

    def contains(self, vec):
        """True if the length-n^2 vector (dense or sparse) lies in R."""
        from kszl.exactcore import Echelon

        ech = Echelon()
        for r in self.sparse_relations():
            ech.add(r)
        if not isinstance(vec, dict):
            vec = {c: v for c, v in enumerate(vec) if v}
        return ech.contains(vec)

    def renamed(self, name):
        return replace(self, name=name)

    def index(self, gen):
        return self.generators.index(gen)


@dataclass(frozen=True)
class GeneratorMap:
    """Degree-one data of a graded algebra map.

    ``matrix`` is n_target x n_source; column j holds the image of source
    generator j.  ``verified`` and ``automorphism`` are set only by
    :func:`kszl.morphisms.verify_map`.
    """

    source: QuadraticPresentation
    target: QuadraticPresentation
    matrix: ExactMatrix
    name: str = dc_field(default="f", compare=False)
    verified: bool = dc_field(default=False, compare=False)
    automorphism: bool = dc_field(default=False, compare=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.n, self.source.n):
            raise DimensionMismatch(
                f"map matrix has shape {self.matrix.shape}, expected {(self.target.n, self.source.n)}"
            )

    def image(self, j):
        """Image of source generator j as a list of target coefficients."""
        return self.matrix.column(j)

    def apply_quadratic(self, vec):
        """(M (x) M) applied to a sparse degree-2 vector on the source word basis."""
        n, m = self.source.n, self.target.n
        cols = [self.matrix.column(j) for j in range(n)]
        out = {}
        for c, v in vec.items():
            i, j = divmod(c, n)
            ci, cj = cols[i], cols[j]
            for k in range(m):
                if ci[k]:
                    a = v * ci[k]
                    for l in range(m):
                        if cj[l]:
                            key = k * m + l
                            nv = out.get(key, 0) + a * cj[l]
                            if nv:
                                out[key] = nv
                            else:
                                out.pop(key, None)
        return out

    def with_flags(self, verified, automorphism):
        return replace(self, verified=verified, automorphism=automorphism)


def identity_map(P, name="id"):
    return GeneratorMap(P, P, ExactMatrix.identity(P.n, P.field.one), name=name)


def scalar_map(P, c, name=None):
    c = P.field(c)
    return GeneratorMap(P, P, ExactMatrix.identity(P.n, P.field.one) * c, name=name or f"{c}")


def minus_one(P):
    """The automorphism a -> (-1)^deg(a) a."""
    return scalar_map(P, -1, name="minus_one")


def diagonal_map(P, entries, name="diag"):
    if len(entries) != P.n:
        raise DimensionMismatch("one diagonal entry per generator")
    zero = P.field.zero
    rows = tuple(tuple(P.field(entries[i]) if i == j else zero for j in range(P.n)) for i in range(P.n))
    return GeneratorMap(P, P, ExactMatrix(rows, P.n), name=name)


@dataclass(frozen=True)
class TwistSpec:
    """The bimodule A_sigma(-shift); only shift 1 is supported."""

    automorphism: GeneratorMap
    shift: int = 1

    def __post_init__(self):
        if self.shift != 1:
            raise InputError("only the shift 1 is supported")


def fresh_name(P, preferred=("x", "y", "z", "w", "u", "v", "s")):
    taken = set(P.generators)
    for cand in preferred:
        if cand not in taken and not (cand == "t" and not P.field.is_rational):
            return cand
    k = 1
    while f"x{k}" in taken:
        k += 1
    return f"x{k}"

