"""Exact ground fields: the rationals and simple extensions Q[t]/(m(t)).

Rational scalars are plain :class:`fractions.Fraction` objects (already in
lowest terms with a positive denominator).  Elements of an extension are
:class:`FieldElement` instances that interoperate with ``int`` and
``Fraction`` through the usual operators, so the linear algebra in
:mod:`kszl.exactcore.linalg` is written once for both kinds of field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from kszl.errors import InvalidField, NotInvertible, ZeroInverse


# dense polynomials over Q, coefficient lists low -> high, no trailing zeros

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    while len(r) >= len(b):
        c = r[-1] / lead
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = _trim(r)
    return _trim(q), r


def _poly_xgcd(a, b):
    """Return (g, s) with g = gcd(a, b) monic and s*a = g mod b."""
    r0, r1 = _trim(a), _trim(b)
    s0, s1 = [Fraction(1)], []
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r0:
        return [], []
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in s0]


def _derivative(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (empty modulus) or Q[t]/(m) for a monic squarefree m.

    Irreducibility of ``m`` is not checked; if ``m`` factors, inverting a
    zero divisor raises :class:`NotInvertible`.
    """

    modulus: tuple = ()

    def __post_init__(self):
        mod = tuple(Fraction(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if not mod:
            return
        if len(mod) < 2:
            raise InvalidField("modulus must have positive degree")
        if mod[-1] != 1:
            raise InvalidField("modulus must be monic")
        g, _ = _poly_xgcd(list(mod), _derivative(list(mod)))
        if len(g) != 1:
            raise InvalidField("modulus must be squarefree")

    @property
    def is_rational(self):
        return not self.modulus

    @property
    def degree(self):
        return max(len(self.modulus) - 1, 1)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce an int, Fraction, coefficient list or FieldElement."""
        if self.is_rational:
            if isinstance(value, FieldElement):
                if any(value.residue[1:]):
                    raise InvalidField(f"{value} is not rational")
                return value.residue[0]
            if isinstance(value, (list, tuple)):
                value = value[0] if value else 0
            return Fraction(value)
        if isinstance(value, FieldElement):
            if value.field != self:
                raise InvalidField("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, value)
        return FieldElement(self, (Fraction(value),))

    @property
    def generator(self):
        """The adjoined element t."""
        if self.is_rational:
            raise InvalidField("QQ has no adjoined generator")
        return FieldElement(self, (0, 1))

    def describe(self):
        if self.is_rational:
            return "QQ"
        return "QQ adjoin t mod " + _format_poly(self.modulus)


QQ = FieldSpec()


class FieldElement:
    """Element of Q[t]/(m), stored as its reduced residue vector."""

    __slots__ = ("field", "residue")

    def __init__(self, field, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        mod = list(field.modulus)
        if len(coeffs) >= len(mod):
            _, coeffs = _poly_divmod(coeffs, mod)
        deg = field.degree
        coeffs = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        self.field = field
        self.residue = tuple(coeffs)

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidField("mixed fields")
            return other
        if isinstance(other, Rational):
            return FieldElement(self.field, (other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.residue, o.residue)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.residue])

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a - b for a, b in zip(self.residue, o.residue)])

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return FieldElement(self.field, [a * other for a in self.residue])
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, _poly_mul(_trim(self.residue), _trim(o.residue)))

    __rmul__ = __mul__

    def inverse(self):
        return field_inverse(self, self.field)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement(self.field, (1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.residue)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.residue == o.residue

    def __hash__(self):
        if not any(self.residue[1:]):
            return hash(self.residue[0])
        return hash((self.field, self.residue))

    def __repr__(self):
        return f"FieldElement({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def field_inverse(x, field=QQ):
    """Multiplicative inverse of ``x`` in ``field``.

    Raises ZeroInverse for 0 and NotInvertible when the extended gcd with the
    modulus is a nontrivial factor (only possible for a reducible modulus).
    """
    x = field(x)
    if not x:
        raise ZeroInverse("0 has no inverse")
    if field.is_rational:
        return 1 / x
    g, s = _poly_xgcd(_trim(x.residue), list(field.modulus))
    if len(g) != 1:
        raise NotInvertible(f"{x} shares the factor {_format_poly(g)} with the modulus")
    return FieldElement(field, s)


def _format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_poly(coeffs, var="t"):
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_rational(mag)}*{mono}"
        else:
            body = _format_rational(mag)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def format_scalar(x):
    """Serialize a scalar: ``"p/q"`` for rationals, a polynomial in t otherwise."""
    if isinstance(x, FieldElement):
        return _format_poly(x.residue)
    return _format_rational(x)


def is_simple_scalar(x):
    """True when the scalar prints as a single signed rational."""
    return not isinstance(x, FieldElement) or not any(x.residue[1:])


def parse_scalar(text, field=QQ):
    """Inverse of :func:`format_scalar`."""
    from kszl.presentation.dsl import parse_scalar_expr

    return parse_scalar_expr(text, field)
