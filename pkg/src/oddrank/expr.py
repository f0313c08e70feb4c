"""A small expression language for q-series built from the package's atoms.

Grammar (``^`` binds tighter than ``*`` and ``/``, which bind tighter than
``+`` and ``-``; exponents are integers)::

    eta(d)                 Dedekind eta of d*tau
    P(a;b)                 (q^a; q^b)_inf
    J(a1,...,am;M)         [q^a1, ..., q^am; q^M]_inf  (any residues not divisible by M)
    L(A,B,C;d,e)           sum_n q^(A n^2+B n+C) / (1 - q^(d n+e))
    L(A,B,C;d,e;alt)       the same with (-1)^n
    q, integers, parentheses

Eta factors of one product are gathered into a single eta-quotient, so only
the total q-prefactor has to be integral (``eta(50)/eta(2)`` is fine,
``eta(2)`` alone is not).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import NonInvertibleError
from .lambert import LambertSpec, lambert_expand
from .products import EtaQuotient, bracket_expand, normalize_bracket, pochhammer_expand
from .series import QSeries

__all__ = ["ParseError", "parse", "evaluate", "Node"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        out.append(tok)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


# --- syntax tree ---------------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class QVar:
    pass


@dataclass(frozen=True)
class Eta:
    d: int


@dataclass(frozen=True)
class Poch:
    a: int
    b: int


@dataclass(frozen=True)
class Bracket:
    residues: tuple[int, ...]
    modulus: int


@dataclass(frozen=True)
class Lambert:
    spec: LambertSpec


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]  # (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple[tuple["Node", int], ...]  # (base, exponent)


Node = Union[Const, QVar, Eta, Poch, Bracket, Lambert, Sum, Product]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of expression in {self.text!r}")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r} but found {tok!r} in {self.text!r}")
        self.i += 1
        return tok

    def integer(self) -> int:
        sign = 1
        while self.peek() in ("-", "+"):
            if self.take() == "-":
                sign = -sign
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected an integer, found {tok!r}")
        return sign * int(tok)

    def int_list(self, stop: str) -> list[int]:
        vals = [self.integer()]
        while self.peek() == ",":
            self.take()
            vals.append(self.integer())
        if self.peek() != stop:
            raise ParseError(f"expected {stop!r} in {self.text!r}")
        return vals

    def parse(self) -> Node:
        node = self.sum()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} in {self.text!r}")
        return node

    def sum(self) -> Node:
        terms = []
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        terms.append((sign, self.product()))
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            terms.append((sign, self.product()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Sum(tuple(terms))

    def product(self) -> Node:
        factors = [(self.power(), 1)]
        while self.peek() in ("*", "/"):
            op = self.take()
            base = self.power()
            factors.append((base, 1 if op == "*" else -1))
        return factors[0][0] if len(factors) == 1 else Product(tuple(factors))

    def power(self) -> Node:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            if self.peek() == "(":
                self.take()
                k = self.integer()
                self.take(")")
            else:
                k = self.integer()
            return Product(((base, k),))
        return base

    def atom(self) -> Node:
        tok = self.take()
        if tok.isdigit():
            return Const(int(tok))
        if tok == "-":
            return Product(((Const(-1), 1), (self.power(), 1)))
        if tok == "(":
            inner = self.sum()
            self.take(")")
            return inner
        if tok == "q":
            return QVar()
        if tok == "eta":
            self.take("(")
            d = self.integer()
            self.take(")")
            return Eta(d)
        if tok == "P":
            self.take("(")
            a = self.integer()
            self.take(";")
            b = self.integer()
            self.take(")")
            return Poch(a, b)
        if tok == "J":
            self.take("(")
            res = self.int_list(";")
            self.take(";")
            m = self.integer()
            self.take(")")
            return Bracket(tuple(res), m)
        if tok == "L":
            self.take("(")
            quad = self.int_list(";")
            self.take(";")
            lin = [self.integer()]
            self.take(",")
            lin.append(self.integer())
            alt = False
            if self.peek() == ";":
                self.take()
                flag = self.take()
                if flag != "alt":
                    raise ParseError(f"unknown Lambert flag {flag!r}")
                alt = True
            self.take(")")
            if len(quad) != 3:
                raise ParseError("L(...) needs three quadratic coefficients A,B,C")
            return Lambert(LambertSpec(quad[0], quad[1], quad[2], lin[0], lin[1], alt))
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


def parse(text: str) -> Node:
    return _Parser(text).parse()


# --- evaluation ----------------------------------------------------------


def _flatten(node: Node, k: int, out: list[tuple[Node, int]]) -> None:
    if isinstance(node, Product):
        for base, e in node.factors:
            _flatten(base, k * e, out)
    else:
        out.append((node, k))


def _pow(s: QSeries, k: int) -> QSeries:
    if k >= 0:
        return s ** k
    if s.is_zero() or abs(s[s.order]) != 1:
        raise NonInvertibleError(f"cannot invert a series with leading coefficient other than +-1")
    return s ** k


def _eval(node: Node, w: int) -> QSeries:
    if isinstance(node, Const):
        return QSeries.monomial(0, w, node.value) if node.value else QSeries.zero(w)
    if isinstance(node, QVar):
        return QSeries.monomial(1, w)
    if isinstance(node, Eta):
        return EtaQuotient({node.d: 1}).expand(w)
    if isinstance(node, Poch):
        return pochhammer_expand(node.a, node.b, w)
    if isinstance(node, Bracket):
        sign, shift, reduced = normalize_bracket(node.residues, node.modulus)
        return bracket_expand(reduced, node.modulus, w - shift).shift(shift) * sign
    if isinstance(node, Lambert):
        return lambert_expand(node.spec, w)
    if isinstance(node, Sum):
        acc = None
        for sign, term in node.terms:
            s = _eval(term, w)
            s = s if sign == 1 else -s
            acc = s if acc is None else acc + s
        return acc
    # product: constants and q-powers are exact, eta factors are gathered
    flat: list[tuple[Node, int]] = []
    _flatten(node, 1, flat)
    const, qshift, eta = 1, 0, {}
    rest = []
    for base, k in flat:
        if isinstance(base, Const):
            if k < 0 and abs(base.value) != 1:
                raise NonInvertibleError(f"division by {base.value} leaves the integers")
            const *= base.value ** abs(k)
        elif isinstance(base, QVar):
            qshift += k
        elif isinstance(base, Eta):
            eta[base.d] = eta.get(base.d, 0) + k
        else:
            rest.append((base, k))
    acc = EtaQuotient(eta).expand(w - qshift) if eta else QSeries.one(w - qshift)
    for base, k in rest:
        acc = acc * _pow(_eval(base, w - qshift), k)
    return acc.shift(qshift) * const


def evaluate(expr: str | Node, prec: int, max_slack: int = 4096) -> QSeries:
    """q-expansion of ``expr`` valid through ``q^(prec-1)``.

    The working precision is raised until the result covers ``prec`` (needed
    when intermediate factors carry negative powers of q).
    """
    node = parse(expr) if isinstance(expr, str) else expr
    slack = 0
    while True:
        out = _eval(node, prec + slack)
        if out.precision >= prec:
            return out.truncate(prec)
        if slack >= max_slack:
            raise ArithmeticError(f"could not reach precision {prec} (got {out.precision})")
        slack = max(8, 2 * slack, prec - out.precision)
