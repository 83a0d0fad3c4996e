"""Text format for presentations and generator maps.

::

    # comments run to end of line
    algebra S over QQ { gens x, y; rels x*y - 2*y*x; }
    algebra K over QQ adjoin t mod t^2 + t + 1 { gens x, y; rels x*y - t*y*x; }
    map nu_inv : S -> S { x -> 2*x; y -> (1/2)*y; }

Expressions are sums of products of numbers, generators, ``t`` (in an
extension field) and parenthesized subexpressions; ``^`` takes a
nonnegative integer exponent.  Products of generators do not commute.
"""

from __future__ import annotations

import re

from kszl.errors import (
    DSLSyntaxError,
    InhomogeneousRelation,
    NonLinearImage,
    NonQuadraticRelation,
    UnknownAlgebra,
    UnknownGenerator,
)
from kszl.exactcore import QQ, ExactMatrix, FieldSpec
from kszl.exactcore.field import FieldElement, format_scalar, is_simple_scalar
from kszl.presentation.model import GeneratorMap, QuadraticPresentation

_TOKEN = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<arrow>->)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<num>\d+)|(?P<sym>[{}();,:+\-*/^])")


def tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind if kind != "arrow" else "sym", value, line, col))
        nl = value.count("\n")
        if nl:
            line += nl
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


# noncommutative polynomials: dict word(tuple of generator indices) -> coefficient

def _padd(a, b, sign=1):
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, 0) + sign * c
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def _pmul(a, b):
    out = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            v = out.get(w, 0) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return DSLSyntaxError(msg, tok[2], tok[3])

    def peek(self, value):
        return self.tok[1] == value and self.tok[0] in ("sym", "name")

    def take(self, value=None, kind=None):
        tok = self.tok
        if value is not None and tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        if kind is not None and tok[0] != kind:
            raise self.error(f"expected {kind}, found {tok[1] or 'end of input'!r}")
        self.i += 1
        return tok

    # expressions

    def expr(self, gens, field):
        sign = 1
        if self.peek("+") or self.peek("-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term(gens, field)
        if sign < 0:
            acc = {w: -c for w, c in acc.items()}
        while self.peek("+") or self.peek("-"):
            s = 1 if self.take()[1] == "+" else -1
            acc = _padd(acc, self.term(gens, field), s)
        return acc

    def term(self, gens, field):
        acc = self.power(gens, field)
        while self.peek("*") or self.peek("/"):
            op = self.take()
            rhs = self.power(gens, field)
            if op[1] == "*":
                acc = _pmul(acc, rhs)
            else:
                if set(rhs) - {()} or not rhs.get(()):
                    raise self.error("can only divide by a nonzero scalar", op)
                inv = 1 / rhs[()]
                acc = {w: c * inv for w, c in acc.items()}
        return acc

    def power(self, gens, field):
        base = self.atom(gens, field)
        if self.peek("^"):
            self.take("^")
            k = int(self.take(kind="num")[1])
            out = {(): field.one}
            for _ in range(k):
                out = _pmul(out, base)
            return out
        return base

    def atom(self, gens, field):
        tok = self.tok
        if tok[0] == "num":
            self.take()
            return {(): field(int(tok[1]))}
        if self.peek("("):
            self.take("(")
            inner = self.expr(gens, field)
            self.take(")")
            return inner
        if tok[0] == "name":
            self.take()
            if tok[1] in gens:
                return {(gens.index(tok[1]),): field.one}
            if tok[1] == "t" and not field.is_rational:
                return {(): field.generator}
            raise UnknownGenerator(f"unknown generator {tok[1]!r} (line {tok[2]}, col {tok[3]})")
        raise self.error(f"unexpected {tok[1] or 'end of input'!r} in expression")

    # items

    def field_spec(self):
        self.take("QQ")
        if not self.peek("adjoin"):
            return QQ
        self.take("adjoin")
        var = self.take(kind="name")
        if var[1] != "t":
            raise self.error("the adjoined element must be called t", var)
        self.take("mod")
        tok = self.tok
        poly = self.expr(["t"], QQ)
        if not poly:
            raise self.error("zero modulus", tok)
        coeffs = [0] * (max(len(w) for w in poly) + 1)
        for w, c in poly.items():
            coeffs[len(w)] = c
        return FieldSpec(tuple(coeffs))

    def namelist(self):
        names = [self.take(kind="name")[1]]
        while self.peek(","):
            self.take(",")
            names.append(self.take(kind="name")[1])
        return names

    def algebra(self):
        self.take("algebra")
        name = self.take(kind="name")[1]
        self.take("over")
        fld = self.field_spec()
        self.take("{")
        self.take("gens")
        gens = self.namelist()
        self.take(";")
        rows = []
        if self.peek("rels"):
            self.take("rels")
            while True:
                tok = self.tok
                rows.append(_quadratic_row(self.expr(gens, fld), len(gens), tok))
                if not self.peek(","):
                    break
                self.take(",")
            self.take(";")
        self.take("}")
        return QuadraticPresentation(tuple(gens), tuple(r for r in rows if r), fld, name=name)

    def map(self, algebras):
        self.take("map")
        name = self.take(kind="name")[1]
        self.take(":")
        src_tok = self.take(kind="name")
        self.take("->")
        tgt_tok = self.take(kind="name")
        for tok in (src_tok, tgt_tok):
            if tok[1] not in algebras:
                raise UnknownAlgebra(f"unknown algebra {tok[1]!r} (line {tok[2]}, col {tok[3]})")
        src, tgt = algebras[src_tok[1]], algebras[tgt_tok[1]]
        if src.field != tgt.field:
            raise self.error("source and target live over different fields", src_tok)
        self.take("{")
        images = {}
        while not self.peek("}"):
            lhs = self.take(kind="name")
            if lhs[1] not in src.generators:
                raise UnknownGenerator(f"{lhs[1]!r} is not a generator of {src.name} (line {lhs[2]}, col {lhs[3]})")
            if lhs[1] in images:
                raise self.error(f"second image for {lhs[1]!r}", lhs)
            self.take("->")
            tok = self.tok
            poly = self.expr(list(tgt.generators), tgt.field)
            if any(len(w) != 1 for w in poly):
                raise NonLinearImage(
                    f"image of {lhs[1]!r} is not a linear combination of generators (line {tok[2]}, col {tok[3]})"
                )
            images[lhs[1]] = poly
            self.take(";")
        end = self.take("}")
        missing = [g for g in src.generators if g not in images]
        if missing:
            raise self.error(f"no image given for {', '.join(missing)}", end)
        zero = tgt.field.zero
        rows = tuple(
            tuple(images[g].get((i,), zero) for g in src.generators) for i in range(tgt.n)
        )
        return GeneratorMap(src, tgt, ExactMatrix(rows, src.n), name=name)

    def file(self):
        algebras, maps = {}, {}
        while self.tok[0] != "eof":
            if self.peek("algebra"):
                tok = self.tok
                P = self.algebra()
                if P.name in algebras:
                    raise self.error(f"algebra {P.name!r} defined twice", tok)
                algebras[P.name] = P
            elif self.peek("map"):
                tok = self.tok
                f = self.map(algebras)
                if f.name in maps:
                    raise self.error(f"map {f.name!r} defined twice", tok)
                maps[f.name] = f
            else:
                raise self.error(f"expected 'algebra' or 'map', found {self.tok[1]!r}")
        return algebras, maps


def _quadratic_row(poly, n, tok):
    lengths = {len(w) for w in poly}
    if len(lengths) > 1:
        raise InhomogeneousRelation(f"relation mixes degrees {sorted(lengths)} (line {tok[2]}, col {tok[3]})")
    if lengths and lengths != {2}:
        raise NonQuadraticRelation(f"relation has degree {lengths.pop()} (line {tok[2]}, col {tok[3]})")
    return {w[0] * n + w[1]: c for w, c in poly.items()}


def parse_file(text):
    """Parse a DSL document into ({name: presentation}, {name: map}), in file order."""
    return _Parser(text).file()


def parse_presentation(text):
    """Parse text holding one algebra definition (the first one is returned)."""
    algebras, _ = parse_file(text)
    if not algebras:
        raise DSLSyntaxError("no algebra definition found", 1, 1)
    return next(iter(algebras.values()))


def parse_map(text, algebras):
    """Parse a single map definition against already known algebras.  No verification."""
    p = _Parser(text)
    f = p.map(dict(algebras))
    if p.tok[0] != "eof":
        raise p.error("trailing input after map")
    return f


def parse_scalar_expr(text, field=QQ):
    p = _Parser(text)
    poly = p.expr([], field)
    if p.tok[0] != "eof":
        raise p.error("trailing input after scalar")
    return poly.get((), field.zero)


# printing

def _coef_prefix(c):
    """Return (sign, text-before-monomial) for a nonzero coefficient."""
    if is_simple_scalar(c):
        q = c if not isinstance(c, FieldElement) else c.residue[0]
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        if mag == 1:
            return sign, ""
        if mag.denominator == 1:
            return sign, f"{mag.numerator}*"
        return sign, f"({mag.numerator}/{mag.denominator})*"
    return "+", f"({format_scalar(c)})*"


def format_poly(terms, names):
    """Format [(word, coeff)] with words as tuples of generator indices."""
    parts = []
    for w, c in terms:
        if not c:
            continue
        sign, pre = _coef_prefix(c)
        mono = "*".join(names[i] for i in w)
        if not mono:
            body = pre[:-1] if pre else "1"
            body = body[1:-1] if body.startswith("(") and is_simple_scalar(c) else body
        else:
            body = pre + mono
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_relation(P, row):
    n = P.n
    terms = [((c // n, c % n), v) for c, v in enumerate(row) if v]
    return format_poly(terms, P.generators)


def format_linear(coeffs, names):
    return format_poly([((i,), c) for i, c in enumerate(coeffs) if c], names)


def print_presentation(P):
    lines = [f"algebra {P.name} over {P.field.describe()} {{", f"  gens {', '.join(P.generators)};"]
    if P.relations:
        rels = ", ".join(format_relation(P, r) for r in P.relations)
        lines.append(f"  rels {rels};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_map(f):
    lines = [f"map {f.name} : {f.source.name} -> {f.target.name} {{"]
    for j, g in enumerate(f.source.generators):
        lines.append(f"  {g} -> {format_linear(f.image(j), f.target.generators)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
