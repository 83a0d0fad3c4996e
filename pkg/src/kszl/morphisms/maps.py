"""Well-definedness and isomorphism checks for maps given on generators."""

from __future__ import annotations

from dataclasses import dataclass

from kszl.errors import (
    DimensionMismatch,
    NotInvertible,
    RelationDimMismatch,
    RelationNotPreserved,
)
from kszl.exactcore import Echelon, ExactMatrix, solve_membership
from kszl.presentation import GeneratorMap


def _invertible(M):
    if M.nrows != M.ncols:
        return False
    try:
        M.inverse()
    except NotInvertible:
        return False
    return True


def verify_map(f):
    """Check (M (x) M)(R_source) lies in R_target and set the map's flags.

    ``automorphism`` is set when, in addition, the map is an endomorphism
    with invertible matrix (then the relation spaces have equal dimension).
    Raises RelationNotPreserved naming the first offending relation.
    """
    if f.source.field != f.target.field:
        raise DimensionMismatch("source and target live over different fields")
    ech = Echelon()
    for r in f.target.sparse_relations():
        ech.add(r)
    for idx, r in enumerate(f.source.sparse_relations()):
        if not ech.contains(f.apply_quadratic(r)):
            raise RelationNotPreserved(idx)
    iso_grade = _invertible(f.matrix) and f.source.dim_relations == f.target.dim_relations
    return f.with_flags(True, iso_grade and f.source == f.target)


def is_well_defined(f):
    try:
        verify_map(f)
    except RelationNotPreserved:
        return False
    return True


@dataclass(frozen=True)
class IsoCertificate:
    """Replayable evidence that a generator map induces a graded isomorphism."""

    map: GeneratorMap
    checks: tuple  # (relation index, coefficients in the target relation basis)
    inverse: ExactMatrix

    def replay(self):
        f = self.map
        target = f.target.relation_matrix()
        n2 = f.target.n ** 2
        for idx, coeffs in self.checks:
            img = f.apply_quadratic(f.source.sparse_relations()[idx])
            combo = [sum((c * row[k] for c, row in zip(coeffs, target.rows)), f.target.field.zero)
                     for k in range(n2)]
            if any(combo[k] != img.get(k, 0) for k in range(n2)):
                return False
        return (f.matrix @ self.inverse).is_identity() and (self.inverse @ f.matrix).is_identity()

    def inverse_map(self):
        f = self.map
        return GeneratorMap(f.target, f.source, self.inverse, name=f"{f.name}_inv")


def verify_iso(f):
    """Certificate that ``f`` induces a graded isomorphism of the presented algebras.

    For quadratic presentations an invertible degree-one matrix carrying
    R_source into R_target, with dim R_source = dim R_target, carries
    R_source onto R_target, which is exactly a graded isomorphism.
    """
    if f.source.field != f.target.field:
        raise DimensionMismatch("source and target live over different fields")
    if f.source.n != f.target.n:
        raise NotInvertible(f"{f.source.n} generators cannot map bijectively onto {f.target.n}")
    inv = f.matrix.inverse()
    if f.source.dim_relations != f.target.dim_relations:
        raise RelationDimMismatch(
            f"dim R_source = {f.source.dim_relations} but dim R_target = {f.target.dim_relations}"
        )
    target = f.target.relation_matrix()
    n2 = f.target.n ** 2
    checks = []
    for idx, r in enumerate(f.source.sparse_relations()):
        img = f.apply_quadratic(r)
        coeffs = solve_membership(target, [img.get(k, 0) for k in range(n2)])
        if coeffs is None:
            raise RelationNotPreserved(idx)
        checks.append((idx, tuple(coeffs)))
    verified = f.with_flags(True, f.source == f.target)
    return IsoCertificate(verified, tuple(checks), inv)


def compose(f, g):
    """f o g (apply g first)."""
    if g.target.n != f.source.n or g.target != f.source:
        raise DimensionMismatch("maps are not composable")
    M = f.matrix @ g.matrix
    verified = f.verified and g.verified
    return GeneratorMap(g.source, f.target, M, name=f"{f.name}*{g.name}",
                        verified=verified, automorphism=f.automorphism and g.automorphism)


def invert(f):
    inv = f.matrix.inverse()
    iso_grade = f.verified and f.source.dim_relations == f.target.dim_relations
    name = f.name[:-4] if f.name.endswith("_inv") else f"{f.name}_inv"
    return GeneratorMap(f.target, f.source, inv, name=name,
                        verified=iso_grade, automorphism=iso_grade and f.automorphism)


def apply_to_word(T, matrix, word):
    """Image of a word under the algebra map with the given degree-one matrix.

    The result is a vector over ``T.basis[len(word)]`` (index -> coeff), where
    ``T`` truncates the target algebra.
    """
    vec = {0: T.field.one}
    for d, g in enumerate(word):
        out = {}
        for k in range(matrix.nrows):
            c = matrix[k, g]
            if c:
                for idx, v in T.mul_letter(vec, d, k).items():
                    nv = out.get(idx, 0) + c * v
                    if nv:
                        out[idx] = nv
                    else:
                        out.pop(idx, None)
        vec = out
    return vec


def graded_matrix(T_src, T_tgt, matrix, d):
    """Matrix of the induced map A_d -> B_d on normal-word bases (columns = images)."""
    zero = T_tgt.field.zero
    cols = [apply_to_word(T_tgt, matrix, w) for w in T_src.basis[d]]
    rows = tuple(tuple(col.get(i, zero) for col in cols) for i in range(len(T_tgt.basis[d])))
    return ExactMatrix(rows, len(cols))
