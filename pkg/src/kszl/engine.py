"""Degree-wise arithmetic in A = T(V)/(R), truncated at a maximal degree N.

Degree d is built from degree d-1 by

    A_d = (A_{d-1} (x) V) / span{ w * r : w a normal word of degree d-2, r in R }

which equals T_d / I_d because I_d = I_{d-1} V + T_{d-2} R.  Columns of
A_{d-1} (x) V are the words w g with w normal, in lexicographic order, and
the pivots of the reduced row echelon form are the leftmost words.  The
non-pivot words are the normal words of degree d.  This gives exactly the
normal words and normal forms that a row reduction of I_d inside the full
n^d word space produces with lexicographic column order, because
lexicographic order is compatible with multiplication by a letter.

Elements are ``dict`` objects mapping words (tuples of generator indices)
to coefficients.  Words of mixed length are allowed.
"""

from __future__ import annotations

from kszl.errors import BudgetExceeded, DegreeOverflow
from kszl.exactcore import echelonize

DEFAULT_MAX_DEGREE = 8
DEFAULT_WORD_BUDGET = 10**6


class HilbertPrefix(tuple):
    """Coefficients h_0..h_N of a Hilbert series."""

    def __new__(cls, coefficients):
        coefficients = tuple(int(c) for c in coefficients)
        if not coefficients or coefficients[0] != 1:
            raise ValueError("a connected Hilbert series starts with h_0 = 1")
        return super().__new__(cls, coefficients)

    def times_one_plus_t(self):
        return tuple([self[0]] + [self[d] + self[d - 1] for d in range(1, len(self))])

    def over_one_minus_t(self):
        out, acc = [], 0
        for h in self:
            acc += h
            out.append(acc)
        return tuple(out)


def _add_scaled(target, coeff, vec):
    for k, v in vec.items():
        nv = target.get(k, 0) + coeff * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class TruncatedAlgebra:
    """Normal words, normal forms and products of a quadratic algebra up to degree N.

    The object is immutable once built; the product cache is filled on
    demand and every cached value is a deterministic function of its key.
    """

    def __init__(self, presentation, max_degree=DEFAULT_MAX_DEGREE, word_budget=DEFAULT_WORD_BUDGET):
        if max_degree < 2:
            raise ValueError("max_degree must be at least 2")
        n = presentation.n
        if n ** max_degree > word_budget:
            raise BudgetExceeded(
                f"{n}^{max_degree} = {n ** max_degree} words exceeds the budget of {word_budget}"
            )
        self.presentation = presentation
        self.field = presentation.field
        self.max_degree = max_degree
        self.n = n
        one = presentation.field.one
        self.basis = [((),), tuple((g,) for g in range(n))]
        self.index = [{(): 0}, {(g,): g for g in range(n)}]
        # step[d][i][g]: normal form of basis[d-1][i] * g as {index in basis[d]: coeff}
        self.step = [None, [[{g: one} for g in range(n)]]]
        # ideal_bases[d]: rref rows of I_d modulo I_{d-1} V on columns i * n + g
        self.ideal_bases = [[], []]
        rels = presentation.sparse_relations()
        for d in range(2, max_degree + 1):
            self._extend(d, rels)
        self._products = {}
        self._word_nf = {}

    def _extend(self, d, rels):
        n = self.n
        prev_step = self.step[d - 1]
        rows = []
        for w in range(len(self.basis[d - 2])):
            images = prev_step[w]
            for r in rels:
                row = {}
                for c, v in r.items():
                    i, j = divmod(c, n)
                    for k, u in images[i].items():
                        col = k * n + j
                        nv = row.get(col, 0) + v * u
                        if nv:
                            row[col] = nv
                        else:
                            row.pop(col, None)
                if row:
                    rows.append(row)
        ideal, pivots = echelonize(rows)
        pivot_rows = dict(zip(pivots, ideal))
        prev_words = self.basis[d - 1]
        words, new_index = [], {}
        for c in range(len(prev_words) * n):
            if c not in pivot_rows:
                new_index[c] = len(words)
                words.append(prev_words[c // n] + (c % n,))
        one = self.field.one
        step = []
        for i in range(len(prev_words)):
            per_gen = []
            for g in range(n):
                c = i * n + g
                if c in pivot_rows:
                    per_gen.append({new_index[k]: -v for k, v in pivot_rows[c].items() if k != c})
                else:
                    per_gen.append({new_index[c]: one})
            step.append(per_gen)
        self.basis.append(tuple(words))
        self.index.append({w: k for k, w in enumerate(words)})
        self.step.append(step)
        self.ideal_bases.append(ideal)

    # basic data

    @property
    def dims(self):
        return [len(b) for b in self.basis]

    def hilbert(self):
        return HilbertPrefix(self.dims)

    def ideal_dim(self, d):
        """dim I_d inside the n^d-dimensional word space."""
        return self.n ** d - len(self.basis[d])

    def normal_words(self, d):
        return self.basis[d]

    def is_finite_dimensional(self):
        return 0 in self.dims

    def socle_degree(self):
        """Top nonzero degree, or None if no vanishing degree is visible."""
        dims = self.dims
        if 0 not in dims:
            return None
        return dims.index(0) - 1

    def total_basis(self):
        return [w for d in range(self.max_degree + 1) for w in self.basis[d]]

    # index-level arithmetic

    def _check_degree(self, d):
        if d > self.max_degree:
            raise DegreeOverflow(f"degree {d} exceeds the truncation degree {self.max_degree}")

    def mul_letter(self, vec, d, g):
        """Right-multiply a vector over basis[d] (index -> coeff) by generator g."""
        self._check_degree(d + 1)
        step = self.step[d + 1]
        out = {}
        for i, c in vec.items():
            _add_scaled(out, c, step[i][g])
        return out

    def mul_word(self, vec, d, word):
        for g in word:
            vec = self.mul_letter(vec, d, g)
            d += 1
        return vec

    def product_indices(self, p, i, q, j):
        """basis[p][i] * basis[q][j] as {index in basis[p + q]: coeff}."""
        key = (p, i, q, j)
        out = self._products.get(key)
        if out is None:
            self._check_degree(p + q)
            out = self.mul_word({i: self.field.one}, p, self.basis[q][j])
            self._products[key] = out
        return out

    def word_normal_form(self, word):
        """Normal form of an arbitrary word, over basis[len(word)] indices."""
        out = self._word_nf.get(word)
        if out is None:
            self._check_degree(len(word))
            out = self.mul_word({0: self.field.one}, 0, word)
            self._word_nf[word] = out
        return out

    # element-level API (dicts keyed by words)

    def to_words(self, vec, d):
        return {self.basis[d][i]: c for i, c in vec.items()}

    def normal_form(self, element):
        """Rewrite an element in terms of normal words."""
        out = {}
        for w, c in element.items():
            if not c:
                continue
            nf = self.word_normal_form(tuple(w))
            _add_scaled(out, c, self.to_words(nf, len(w)))
        return out

    def multiply(self, a, b):
        out = {}
        for wa, ca in a.items():
            if not ca:
                continue
            nfa = self.word_normal_form(tuple(wa))
            p = len(wa)
            for wb, cb in b.items():
                if not cb:
                    continue
                self._check_degree(p + len(wb))
                prod = self.mul_word(nfa, p, tuple(wb))
                _add_scaled(out, ca * cb, self.to_words(prod, p + len(wb)))
        return out

    # self-checks

    def associativity_failures(self, max_total=None):
        """Triples of normal words (a, b, c) with (ab)c != a(bc), total degree <= max_total."""
        top = self.max_degree if max_total is None else min(max_total, self.max_degree)
        bad = []
        for p in range(top + 1):
            for q in range(top + 1 - p):
                for r in range(top + 1 - p - q):
                    for i in range(len(self.basis[p])):
                        for j in range(len(self.basis[q])):
                            ab = self.product_indices(p, i, q, j)
                            for k in range(len(self.basis[r])):
                                left = {}
                                for m, c in ab.items():
                                    _add_scaled(left, c, self.product_indices(p + q, m, r, k))
                                right = {}
                                for m, c in self.product_indices(q, j, r, k).items():
                                    _add_scaled(right, c, self.product_indices(p, i, q + r, m))
                                if left != right:
                                    bad.append((self.basis[p][i], self.basis[q][j], self.basis[r][k]))
        return bad


def truncate(presentation, max_degree=DEFAULT_MAX_DEGREE, word_budget=DEFAULT_WORD_BUDGET):
    return TruncatedAlgebra(presentation, max_degree, word_budget)


def normal_form(T, element):
    return T.normal_form(element)


def multiply(T, a, b):
    return T.multiply(a, b)


def hilbert(T):
    return T.hilbert()
