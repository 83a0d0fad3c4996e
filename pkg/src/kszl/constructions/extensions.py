"""Zhang twists, Ore extensions, trivial extensions and the lifted automorphism."""

from __future__ import annotations

from dataclasses import dataclass

from kszl.engine import truncate
from kszl.errors import (
    NameCollision,
    NotAnAutomorphism,
    RelationNotPreserved,
    VerificationFailed,
)
from kszl.exactcore import ExactMatrix, left_kernel
from kszl.morphisms.maps import apply_to_word, invert, verify_iso, verify_map
from kszl.presentation import (
    GeneratorMap,
    QuadraticPresentation,
    TwistSpec,
    fresh_name,
    identity_map,
)


def _require_automorphism(P, sigma):
    if sigma.source != P or sigma.target != P:
        raise NotAnAutomorphism(f"{sigma.name} is not an endomorphism of {P.name}")
    if sigma.automorphism:
        return sigma
    try:
        checked = verify_map(sigma)
    except RelationNotPreserved as exc:
        raise NotAnAutomorphism(f"{sigma.name} does not preserve the relations: {exc}") from exc
    if not checked.automorphism:
        raise NotAnAutomorphism(f"{sigma.name} is not invertible")
    return checked


def zhang_twist(P, sigma, name=None):
    """Presentation of A^sigma, whose product is a * b = a sigma^i(b) for a of degree i.

    In degree two a relation sum c_ij g_i * g_j holds iff (id (x) sigma)(c)
    lies in R, so the twisted relation space is (id (x) sigma^-1)(R).
    """
    sigma = _require_automorphism(P, sigma)
    inv = sigma.matrix.inverse()
    n = P.n
    rows = []
    for r in P.sparse_relations():
        out = {}
        for c, v in r.items():
            i, j = divmod(c, n)
            for l in range(n):
                u = inv[l, j]
                if u:
                    key = i * n + l
                    nv = out.get(key, 0) + v * u
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
        rows.append(out)
    return QuadraticPresentation(P.generators, tuple(rows), P.field, name=name or f"{P.name}_tw")


def _embed(P, extra):
    """Relations of P re-indexed for the generator list P.generators + extra."""
    n, m = P.n, P.n + extra
    return [{(c // n) * m + (c % n): v for c, v in r.items()} for r in P.sparse_relations()]


def ore_extension(P, sigma, new_name, name=None):
    """A[x; sigma] with deg x = 1: relations R and x a - sigma(a) x for each generator a."""
    if new_name in P.generators:
        raise NameCollision(f"{new_name!r} is already a generator of {P.name}")
    sigma = _require_automorphism(P, sigma)
    n, m = P.n, P.n + 1
    x = n
    rows = _embed(P, 1)
    for j in range(n):
        row = {x * m + j: P.field.one}
        for k in range(n):
            c = sigma.matrix[k, j]
            if c:
                row[k * m + x] = -c
        rows.append(row)
    return QuadraticPresentation(P.generators + (new_name,), tuple(rows), P.field,
                                 name=name or f"{P.name}_ore")


def trivial_extension(P, L, new_name=None, name=None):
    """A (x) A_sigma(-1) presented as A[x; sigma]/(x^2).

    ``L`` is a :class:`TwistSpec` or the automorphism itself.
    """
    sigma = L.automorphism if isinstance(L, TwistSpec) else L
    new_name = new_name or fresh_name(P)
    E = ore_extension(P, sigma, new_name)
    m = E.n
    x = m - 1
    rows = list(E.sparse_relations()) + [{x * m + x: P.field.one}]
    return QuadraticPresentation(E.generators, tuple(rows), P.field, name=name or f"{P.name}_triv")


def hat_automorphism(P, sigma, new_name=None):
    """sigma^(a + b x) = sigma(a) + sigma(b) x on A[x; sigma]/(x^2)."""
    sigma = _require_automorphism(P, sigma)
    E = trivial_extension(P, sigma, new_name)
    n = P.n
    zero, one = P.field.zero, P.field.one
    rows = []
    for i in range(n + 1):
        if i < n:
            rows.append(tuple(sigma.matrix[i, j] for j in range(n)) + (zero,))
        else:
            rows.append((zero,) * n + (one,))
    hat = GeneratorMap(E, E, ExactMatrix(tuple(rows), n + 1), name=f"{sigma.name}_hat")
    try:
        hat = verify_map(hat)
    except RelationNotPreserved as exc:
        raise VerificationFailed(f"lifted automorphism fails on relation {exc.index}") from exc
    if not hat.automorphism:
        raise VerificationFailed("lifted automorphism is not invertible")
    return hat


@dataclass(frozen=True)
class HatTwistReport:
    """Comparison of (A[x;s]/(x^2))^{hat(s)^-1} with A^{s^-1}[x]/(x^2)."""

    twisted_extension: QuadraticPresentation
    extension_of_twist: QuadraticPresentation
    certificate: object

    @property
    def passed(self):
        return self.twisted_extension == self.extension_of_twist


def hat_twist_identity(P, sigma, new_name=None):
    sigma = _require_automorphism(P, sigma)
    new_name = new_name or fresh_name(P)
    hat = hat_automorphism(P, sigma, new_name)
    lhs = zhang_twist(hat.source, invert(hat))
    twisted = zhang_twist(P, invert(sigma))
    rhs = trivial_extension(twisted, identity_map(twisted), new_name)
    cert = verify_iso(GeneratorMap(lhs, rhs, ExactMatrix.identity(lhs.n, P.field.one), name="comparison"))
    return HatTwistReport(lhs, rhs, cert)


def pair_form_presentation(P, sigma, new_name=None):
    """Degree-two relations of A (x) A_sigma(-1) read off from the pair product.

    Generators are (g, 0) for the generators g of A followed by m = (0, 1).
    In degree two the algebra is A_2 + A_1, and the pair product gives
    (g_i,0)(g_j,0) = (g_i g_j, 0), (g_i,0) m = (0, g_i), m (g_j,0) = (0, sigma(g_j))
    and m m = 0.  The relation space is the kernel of this product map.
    """
    sigma = _require_automorphism(P, sigma)
    new_name = new_name or fresh_name(P)
    T = truncate(P, 2)
    n = P.n
    h2 = len(T.basis[2])
    m = n + 1
    rows = []
    for i in range(m):
        for j in range(m):
            if i < n and j < n:
                row = dict(T.product_indices(1, i, 1, j))
            elif i < n:
                row = {h2 + i: P.field.one}
            elif j < n:
                row = {h2 + k: sigma.matrix[k, j] for k in range(n) if sigma.matrix[k, j]}
            else:
                row = {}
            rows.append(row)
    rels = left_kernel(rows, h2 + n)
    return QuadraticPresentation(P.generators + (new_name,), tuple(rels), P.field,
                                 name=f"{P.name}_pair")


@dataclass(frozen=True)
class PairFormReport:
    degree: int
    pairs_checked: int
    failures: tuple

    @property
    def passed(self):
        return not self.failures


def check_pair_form_isomorphism(P, sigma, max_degree=6, new_name=None):
    """Check Phi(a, b) = a + b x is multiplicative on all basis pairs up to ``max_degree``.

    The pair algebra is built from the structure constants of A alone, with
    (a, m)(a', m') = (a a', a m' + m sigma(a')); the other side is the
    truncation of A[x; sigma]/(x^2).
    """
    sigma = _require_automorphism(P, sigma)
    new_name = new_name or fresh_name(P)
    E = trivial_extension(P, sigma, new_name)
    TA = truncate(P, max_degree)
    TE = truncate(E, max_degree)
    x = P.n

    # pair basis in degree d: ("a", word) for A_d, ("m", word) for L_d = A_{d-1}
    def pair_basis(d):
        out = [("a", w) for w in TA.basis[d]]
        if d >= 1:
            out += [("m", w) for w in TA.basis[d - 1]]
        return out

    def pair_product(u, v):
        (ku, wu), (kv, wv) = u, v
        if ku == "m" and kv == "m":
            return {}
        if ku == "a" and kv == "a":
            return {("a", w): c for w, c in TA.to_words(TA.product_indices(
                len(wu), TA.index[len(wu)][wu], len(wv), TA.index[len(wv)][wv]), len(wu) + len(wv)).items()}
        if ku == "a":
            prod = TA.product_indices(len(wu), TA.index[len(wu)][wu], len(wv), TA.index[len(wv)][wv])
            return {("m", w): c for w, c in TA.to_words(prod, len(wu) + len(wv)).items()}
        # m * a' = m sigma(a')
        s = apply_to_word(TA, sigma.matrix, wv)
        out = {}
        for idx, c in s.items():
            prod = TA.product_indices(len(wu), TA.index[len(wu)][wu], len(wv), idx)
            for w, v in TA.to_words(prod, len(wu) + len(wv)).items():
                key = ("m", w)
                nv = out.get(key, 0) + c * v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def phi(element):
        out = {}
        for (kind, w), c in element.items():
            word = w if kind == "a" else w + (x,)
            for nw, v in TE.normal_form({word: c}).items():
                nv = out.get(nw, 0) + v
                if nv:
                    out[nw] = nv
                else:
                    out.pop(nw, None)
        return out

    failures = []
    checked = 0
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            for u in pair_basis(p):
                for v in pair_basis(q):
                    checked += 1
                    lhs = phi(pair_product(u, v))
                    rhs = TE.multiply(phi({u: 1}), phi({v: 1}))
                    if lhs != rhs:
                        failures.append((u, v))
    # Phi is a graded bijection: both sides have dimension h_d(A) + h_{d-1}(A)
    for d in range(max_degree + 1):
        if len(pair_basis(d)) != len(TE.basis[d]):
            failures.append(("dimension", d))
    return PairFormReport(max_degree, checked, tuple(failures))


def square_zero_extension(P, new_name=None):
    """A[x]/(x^2), the trivial extension by A(-1)."""
    return trivial_extension(P, identity_map(P), new_name)


