"""Frobenius pairings and Nakayama automorphisms.

For a finite-dimensional connected graded algebra with one-dimensional top
degree n, the Nakayama automorphism eta is determined on generators by
a b = b eta(a) for a in A_1 and b in A_{n-1}.  For a Koszul algebra S whose
dual is such an algebra with socle degree d, the Nakayama automorphism of S
is nu = (-1)^{d+1} eta' on generators, eta' being the transpose of eta's
degree-one matrix under the dual-basis identification.
"""

from __future__ import annotations

from dataclasses import dataclass

from kszl.constructions.dual import quadratic_dual
from kszl.engine import truncate
from kszl.errors import NotFrobenius, RelationNotPreserved, TruncationTooShallow, VerificationFailed
from kszl.exactcore import ExactMatrix, rank, solve_membership
from kszl.morphisms.maps import apply_to_word, verify_map
from kszl.presentation import GeneratorMap


@dataclass(frozen=True)
class FrobeniusData:
    socle_degree: int
    pairings: tuple  # pairings[i]: rows basis(A_i), columns basis(A_{n-i}), value = top coefficient of a b
    nondegenerate: bool
    nakayama: GeneratorMap
    nakayama_full: tuple  # per degree, matrix of eta on the normal-word basis


def _top_coefficient(T, p, i, q, j):
    return T.product_indices(p, i, q, j).get(0, T.field.zero)


def frobenius_data(T):
    """Pairings and Nakayama automorphism of a finite-dimensional truncated algebra."""
    n = T.socle_degree()
    if n is None:
        raise TruncationTooShallow(
            f"no vanishing degree visible up to {T.max_degree}; truncate deeper"
        )
    if len(T.basis[n]) != 1:
        raise NotFrobenius(f"top degree {n} has dimension {len(T.basis[n])}, not 1")
    pairings = []
    nondegenerate = True
    for i in range(n + 1):
        rows = tuple(
            tuple(_top_coefficient(T, i, a, n - i, b) for b in range(len(T.basis[n - i])))
            for a in range(len(T.basis[i]))
        )
        M = ExactMatrix(rows, len(T.basis[n - i]))
        pairings.append(M)
        if M.nrows != M.ncols or rank(M) != M.nrows:
            nondegenerate = False
    if not nondegenerate:
        raise NotFrobenius("the pairing into the top degree is degenerate")

    gens = T.n
    # columns of B: <b, g_k> for b in A_{n-1}; eta(g) solves B c = (<g, b>)_b
    if n >= 1:
        B = pairings[n - 1]
        Bt = B.transpose()
        if rank(B) != gens:
            raise NotFrobenius("eta is not determined by the degree n-1 pairing")
        cols = []
        for g in range(gens):
            rhs = [pairings[1][g, b] for b in range(len(T.basis[n - 1]))]
            c = solve_membership(Bt, rhs)
            if c is None:
                raise NotFrobenius(f"no solution for eta on generator {g}")
            cols.append(c)
        eta_rows = tuple(tuple(cols[g][k] for g in range(gens)) for k in range(gens))
        eta = ExactMatrix(eta_rows, gens)
    else:
        eta = ExactMatrix.identity(gens, T.field.one)

    P = T.presentation
    nak = GeneratorMap(P, P, eta, name="eta")
    try:
        nak = verify_map(nak)
    except RelationNotPreserved as exc:
        raise VerificationFailed(f"eta does not preserve relation {exc.index}") from exc
    if not nak.automorphism:
        raise VerificationFailed("eta is not invertible")

    full = []
    zero = T.field.zero
    for d in range(n + 1):
        imgs = [apply_to_word(T, eta, w) for w in T.basis[d]]
        rows = tuple(tuple(col.get(i, zero) for col in imgs) for i in range(len(T.basis[d])))
        full.append(ExactMatrix(rows, len(imgs)))
    return FrobeniusData(n, tuple(pairings), nondegenerate, nak, tuple(full))


def nakayama_identity_failures(T, data):
    """Pairs (a, b) of basis words, of complementary degrees, with <a, b> != <b, eta(a)>."""
    n = data.socle_degree
    bad = []
    for p in range(n + 1):
        q = n - p
        E = data.nakayama_full[p]
        for i in range(len(T.basis[p])):
            for j in range(len(T.basis[q])):
                lhs = _top_coefficient(T, p, i, q, j)
                rhs = sum((E[k, i] * _top_coefficient(T, q, j, p, k) for k in range(len(T.basis[p]))),
                          T.field.zero)
                if lhs != rhs:
                    bad.append((T.basis[p][i], T.basis[q][j]))
    return bad


def nakayama_regular(P, d, word_budget=None):
    """Nakayama automorphism of a Koszul algebra whose dual has socle degree ``d``."""
    dual = quadratic_dual(P)
    kwargs = {} if word_budget is None else {"word_budget": word_budget}
    T = truncate(dual, max(d + 1, 2), **kwargs)
    s = T.socle_degree()
    if s is None:
        raise NotFrobenius(f"the dual of {P.name} does not vanish in degree {d + 1}")
    if s != d:
        raise NotFrobenius(f"the dual of {P.name} has socle degree {s}, not {d}")
    eta = frobenius_data(T).nakayama.matrix
    sign = -1 if (d + 1) % 2 else 1
    nu = GeneratorMap(P, P, eta.transpose() * P.field(sign), name="nu")
    try:
        nu = verify_map(nu)
    except RelationNotPreserved as exc:
        raise VerificationFailed(f"nu does not preserve relation {exc.index} of {P.name}") from exc
    if not nu.automorphism:
        raise VerificationFailed("nu is not invertible")
    return nu
