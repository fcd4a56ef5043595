"""Free magma terms, their linear combinations, and the equation DSL.

Terms are binary trees: :class:`Var` leaves and :class:`Prod` nodes.  Products
are nonassociative, so the DSL insists on explicit ``*`` and parentheses for
every nested product::

    (x*x)*y - x*(x*y)
    2*(x*y) - 1/2*(y*x)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import EmptyEquation, EquationSyntaxError, UnboundVariable
from .scalars import Q, FieldSpec


@dataclass(frozen=True)
class Var:
    name: str

    @property
    def weight(self) -> int:
        return 1

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Prod:
    left: "Term"
    right: "Term"

    @cached_property
    def weight(self) -> int:
        return self.left.weight + self.right.weight

    def __str__(self):
        return f"{_factor_str(self.left)}*{_factor_str(self.right)}"


Term = Union[Var, Prod]


def _factor_str(t: Term) -> str:
    return t.name if isinstance(t, Var) else f"({t})"


def weight(term: Term) -> int:
    """Number of leaves."""
    return term.weight


def term_key(t: Term):
    """Canonical order: weight, then leaf < node, left subtree first."""
    return (t.weight, _struct_key(t))


def _struct_key(t: Term):
    if isinstance(t, Var):
        return (0, t.name)
    return (1, term_key(t.left), term_key(t.right))


def variables_of(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    return variables_of(t.left) | variables_of(t.right)


def occurrences(t: Term, name: str) -> int:
    if isinstance(t, Var):
        return int(t.name == name)
    return occurrences(t.left, name) + occurrences(t.right, name)


def left_power(x: Term, n: int) -> Term:
    """x^{(n}: ((x x) x) ... x."""
    t = x
    for _ in range(n - 1):
        t = Prod(t, x)
    return t


def right_power(x: Term, n: int) -> Term:
    """x^{n)}: x (x ... (x x))."""
    t = x
    for _ in range(n - 1):
        t = Prod(x, t)
    return t


def reverse_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    return Prod(reverse_term(t.right), reverse_term(t.left))


class MagmaPolynomial:
    """A finite linear combination of magma terms over a field."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field: FieldSpec = Q):
        self.field = field
        self.terms: dict[Term, object] = {}
        if terms:
            for t, c in dict(terms).items():
                c = field(c)
                if c:
                    self.terms[t] = c

    @classmethod
    def from_term(cls, t: Term, field: FieldSpec = Q, coeff=1):
        return cls({t: coeff}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def variables(self) -> tuple[str, ...]:
        names: set[str] = set()
        for t in self.terms:
            names |= variables_of(t)
        return tuple(sorted(names))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda tc: term_key(tc[0]))

    def _combine(self, other, sign):
        F = self.field
        out = dict(self.terms)
        for t, c in other.terms.items():
            v = F.add(out.get(t, F.zero), c if sign > 0 else F.neg(c))
            if v:
                out[t] = v
            else:
                out.pop(t, None)
        return MagmaPolynomial(out, F)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "MagmaPolynomial":
        F = self.field
        c = F(c)
        return MagmaPolynomial({t: F.mul(c, v) for t, v in self.terms.items()}, F)

    def __mul__(self, other: "MagmaPolynomial") -> "MagmaPolynomial":
        """Bilinear magma product."""
        F = self.field
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                t = Prod(a, b)
                out[t] = F.add(out.get(t, F.zero), F.mul(c, d))
        return MagmaPolynomial(out, F)

    def weight(self) -> int:
        return max((t.weight for t in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, MagmaPolynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.field.characteristic
        parts = []
        for i, (t, c) in enumerate(self.sorted_terms()):
            neg = p == 0 and c < 0
            mag = -c if neg else c
            body = str(t) if mag == 1 else f"{mag}*{_factor_str(t)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{'-' if neg else '+'} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MagmaPolynomial({str(self)!r}, {self.field})"


def reverse(poly: MagmaPolynomial) -> MagmaPolynomial:
    """Apply the reversal involution to every term."""
    return MagmaPolynomial({reverse_term(t): c for t, c in poly.terms.items()}, poly.field)


# -- parser ---------------------------------------------------------------

_INT = re.compile(r"\d+")
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if m := _INT.match(text, pos):
            toks.append(("int", m.group(), pos))
            pos = m.end()
        elif m := _IDENT.match(text, pos):
            toks.append(("var", m.group(), pos))
            pos = m.end()
        elif ch in "+-*/()":
            toks.append((ch, ch, pos))
            pos += 1
        else:
            raise EquationSyntaxError(f"unexpected character {ch!r}", text, pos)
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "a variable" if kind == "var" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise EquationSyntaxError(f"expected {want}, got {got}", self.text, tok[2])
        self.i += 1
        return tok

    def equation(self):
        terms = []
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        terms.append(self.signed_term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append(self.signed_term(sign))
        tok = self.peek()
        if tok[0] != "end":
            raise EquationSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return terms

    def signed_term(self, sign):
        if self.peek()[0] == "int":
            num = int(self.take()[1])
            den = 1
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise EquationSyntaxError("zero denominator", self.text, self.toks[self.i - 1][2])
            self.take("*")
            coeff = (num, den)
        else:
            coeff = (1, 1)
        term = self.top()
        return sign, coeff, term

    def top(self):
        left = self.factor()
        if self.peek()[0] == "*":
            self.take()
            right = self.factor()
            if self.peek()[0] == "*":
                tok = self.peek()
                raise EquationSyntaxError(
                    "nonassociative product needs parentheses", self.text, tok[2])
            return Prod(left, right)
        return left

    def factor(self):
        tok = self.peek()
        if tok[0] == "var":
            self.take()
            return Var(tok[1])
        if tok[0] == "(":
            self.take()
            inner = self.top()
            self.take(")")
            return inner
        got = "end of input" if tok[0] == "end" else repr(tok[1])
        raise EquationSyntaxError(f"expected a variable or '(', got {got}", self.text, tok[2])


def parse_equation(text: str, field: FieldSpec = Q) -> tuple[tuple[str, ...], MagmaPolynomial]:
    """Parse an equation; returns (sorted variable names, polynomial).

    Raises :class:`EmptyEquation` if the terms cancel to zero.
    """
    from fractions import Fraction

    raw = _Parser(text).equation()
    out: dict = {}
    for sign, (num, den), term in raw:
        c = field(Fraction(sign * num, den))
        out[term] = field.add(out.get(term, field.zero), c)
    poly = MagmaPolynomial(out, field)
    if poly.is_zero():
        raise EmptyEquation(f"equation {text!r} is zero over {field}")
    return poly.variables(), poly


def parse_term(text: str) -> Term:
    (_, _, term), = _Parser(text).equation()
    return term


# -- evaluation -----------------------------------------------------------

def evaluate_term(poly, assignment: dict, algebra):
    """Image of ``poly`` under the algebra map induced by ``assignment``.

    ``poly`` may be a :class:`MagmaPolynomial` or a bare term; assignment
    values are :class:`~envalg.algebra.AlgebraElement`.
    """
    if not isinstance(poly, MagmaPolynomial):
        poly = MagmaPolynomial.from_term(poly, algebra.field)
    memo: dict = {}

    def ev(t):
        if t in memo:
            return memo[t]
        if isinstance(t, Var):
            try:
                v = assignment[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        else:
            v = algebra.multiply(ev(t.left), ev(t.right))
        memo[t] = v
        return v

    total = algebra.zero()
    for t, c in poly.terms.items():
        total = total + ev(t).scale(c)
    return total


def all_terms(names: Iterable[str], w: int) -> list[Term]:
    """Every magma term of weight ``w`` over ``names`` (Catalan-many shapes)."""
    names = list(names)
    if w == 1:
        return [Var(n) for n in names]
    out = []
    for k in range(1, w):
        for a in all_terms(names, k):
            for b in all_terms(names, w - k):
                out.append(Prod(a, b))
    return out
