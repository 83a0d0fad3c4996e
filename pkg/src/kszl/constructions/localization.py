"""Duals of square-zero extensions and the degree-zero part of E[z^-1], E = S^![z; -1]."""

from __future__ import annotations

from dataclasses import dataclass

from kszl.constructions.dual import quadratic_dual
from kszl.constructions.extensions import ore_extension, trivial_extension
from kszl.engine import DEFAULT_WORD_BUDGET, truncate
from kszl.errors import BudgetExceeded, NotFiniteDimensional
from kszl.presentation import QuadraticPresentation, fresh_name, identity_map, minus_one


@dataclass(frozen=True)
class SquareZeroDualReport:
    """A^! vs S^![z;-1] for A = S[x]/(x^2), and S[x]^! vs S^![z;-1]/(z^2)."""

    dual_of_extension: QuadraticPresentation
    skew_extension_of_dual: QuadraticPresentation
    dual_of_polynomial_extension: QuadraticPresentation
    skew_extension_mod_square: QuadraticPresentation

    @property
    def extension_identity(self):
        return self.dual_of_extension == self.skew_extension_of_dual

    @property
    def polynomial_identity(self):
        return self.dual_of_polynomial_extension == self.skew_extension_mod_square

    @property
    def passed(self):
        return self.extension_identity and self.polynomial_identity


def dual_of_square_zero_extension_check(P_S, new_name=None):
    """Compare both sides generator-for-generator (the new generator is last on each side)."""
    z = new_name or fresh_name(P_S, ("z", "w", "u", "v", "s"))
    ident = identity_map(P_S)
    lhs = quadratic_dual(trivial_extension(P_S, ident, z))
    S_dual = quadratic_dual(P_S)
    rhs = ore_extension(S_dual, minus_one(S_dual), z, name=f"{S_dual.name}_skew")
    lhs2 = quadratic_dual(ore_extension(P_S, ident, z))
    m = rhs.n
    zz = (m - 1) * m + (m - 1)
    rhs2 = QuadraticPresentation(rhs.generators, rhs.sparse_relations() + [{zz: P_S.field.one}],
                                 P_S.field, name=f"{rhs.name}_mod_sq")
    return SquareZeroDualReport(lhs, rhs, lhs2, rhs2)


@dataclass(frozen=True)
class FiniteAlgebraTable:
    """A finite-dimensional algebra by structure constants on a labelled basis."""

    labels: tuple
    degrees: tuple
    structure: dict  # (i, j) -> {k: coeff}
    unit: int
    field: object

    @property
    def dimension(self):
        return len(self.labels)

    @property
    def dims(self):
        top = max(self.degrees) if self.degrees else 0
        return [self.degrees.count(d) for d in range(top + 1)]

    def multiply(self, a, b):
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, v in self.structure.get((i, j), {}).items():
                    nv = out.get(k, 0) + ca * cb * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def associativity_failures(self):
        bad = []
        rng = range(self.dimension)
        for i in rng:
            for j in rng:
                ij = self.multiply({i: 1}, {j: 1})
                for k in rng:
                    if self.multiply(ij, {k: 1}) != self.multiply({i: 1}, self.multiply({j: 1}, {k: 1})):
                        bad.append((i, j, k))
        return bad

    def unit_failures(self):
        e = {self.unit: 1}
        return [i for i in range(self.dimension)
                if self.multiply(e, {i: 1}) != {i: 1} or self.multiply({i: 1}, e) != {i: 1}]


@dataclass(frozen=True)
class PsiReport:
    """Exhaustive check that Psi(a) = (-1)^{p(p-1)/2} a z^-p is a unital algebra map."""

    socle_degree: int
    pairs_checked: int
    failures: tuple
    unit_ok: bool
    central_square: bool
    normal_generator: bool
    associativity_failures: int

    @property
    def passed(self):
        return (not self.failures and self.unit_ok and self.central_square
                and self.normal_generator and self.associativity_failures == 0)


def _finite_truncation(P, word_budget, max_try=16):
    N = 2
    while True:
        try:
            T = truncate(P, N, word_budget)
        except BudgetExceeded as exc:
            raise NotFiniteDimensional(
                f"{P.name}: no vanishing degree found before the word budget ran out"
            ) from exc
        if T.socle_degree() is not None:
            return T
        if N >= max_try:
            raise NotFiniteDimensional(f"{P.name}: no vanishing degree up to {N}")
        N += 1


def _psi_sign(p):
    return -1 if (p * (p - 1) // 2) % 2 else 1


def localize_z2_degree0(P_S_dual, word_budget=DEFAULT_WORD_BUDGET, z_name=None):
    """Build Lambda = E[z^-1]_0 for E = S^![z;-1] and check Psi : S^! -> Lambda.

    Lambda has basis a z^-p for normal words a of S^! of degree p.  The sign
    c in z^p b = c b z^p is read off from the structure constants of E, and
    then (a z^-p)(b z^-q) = c^-1 (a b) z^-(p+q).
    """
    T = _finite_truncation(P_S_dual, word_budget)
    s = T.socle_degree()
    z = z_name or fresh_name(P_S_dual, ("z", "w", "u", "v"))
    E = ore_extension(P_S_dual, minus_one(P_S_dual), z)
    TE = truncate(E, max(2 * s, 2), word_budget)
    zi = E.n - 1
    field = P_S_dual.field

    # S^! words sit inside E as the same words (its generators come first)
    basis = [(p, i) for p in range(s + 1) for i in range(len(T.basis[p]))]
    pos = {key: k for k, key in enumerate(basis)}

    normal_generator = True
    commutation = {}
    for q in range(s + 1):
        for j, b in enumerate(T.basis[q]):
            for p in range(s + 1):
                left = TE.word_normal_form((zi,) * p + b)
                right = TE.word_normal_form(b + (zi,) * p)
                if not right:
                    normal_generator = False
                    continue
                k0 = min(right)
                c = left.get(k0, 0) / right[k0]
                if not c or {k: c * v for k, v in right.items()} != left:
                    normal_generator = False
                    continue
                commutation[(p, q, j)] = c

    structure = {}
    for (p, i) in basis:
        for (q, j) in basis:
            if p + q > s:
                continue
            c = commutation.get((p, q, j))
            if c is None:
                continue
            prod = T.product_indices(p, i, q, j)
            if prod:
                inv = 1 / c
                structure[(pos[(p, i)], pos[(q, j)])] = {pos[(p + q, k)]: inv * v for k, v in prod.items()}

    def label(p, i):
        w = T.basis[p][i]
        if not w:
            return "1"
        word = "*".join(P_S_dual.generators[g] for g in w)
        return f"{word}*{z}^-{p}"

    table = FiniteAlgebraTable(
        labels=tuple(label(p, i) for p, i in basis),
        degrees=tuple(p for p, _ in basis),
        structure=structure,
        unit=pos[(0, 0)],
        field=field,
    )

    def psi(p, vec):
        sign = _psi_sign(p)
        return {pos[(p, k)]: sign * v for k, v in vec.items()}

    failures = []
    checked = 0
    for (p, i) in basis:
        for (q, j) in basis:
            checked += 1
            lhs = table.multiply(psi(p, {i: 1}), psi(q, {j: 1}))
            rhs = psi(p + q, T.product_indices(p, i, q, j)) if p + q <= s else {}
            if lhs != rhs:
                failures.append((label(p, i), label(q, j)))

    unit_ok = psi(0, {0: 1}) == {table.unit: 1} and not table.unit_failures()

    # g = z^2 is central in E within the truncation window
    central = True
    for d in range(0, max(2 * s, 2) - 1):
        for w in TE.basis[d]:
            if TE.word_normal_form((zi, zi) + w) != TE.word_normal_form(w + (zi, zi)):
                central = False
                break

    report = PsiReport(
        socle_degree=s,
        pairs_checked=checked,
        failures=tuple(failures),
        unit_ok=unit_ok,
        central_square=central,
        normal_generator=normal_generator,
        associativity_failures=len(table.associativity_failures()),
    )
    return table, report
