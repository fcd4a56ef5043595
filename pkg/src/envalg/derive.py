"""Noncommutative partial derivatives of magma polynomials.

``partial(omega, x)`` lives in the free associative algebra on symbols
``L[m]`` and ``R[m]`` (left and right multiplication by the magma term ``m``)
and is determined by::

    d x / d x = 1,   d y / d x = 0,
    d(ab)/dx = (da/dx) R[b] + (db/dx) L[a]
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .freealg import L, R, FreePoly, MonomialOrder
from .magma import MagmaPolynomial, Term, Var, evaluate_term, term_key
from .scalars import Q, FieldSpec

LAMBDA, RHO = L, R


class MultSymbol(NamedTuple):
    side: str  # "l" (lambda) or "r" (rho)
    term: Term

    def __str__(self):
        return f"{'L' if self.side == L else 'R'}[{self.term}]"


def _word_key(word):
    return (len(word), tuple((s.side, term_key(s.term)) for s in word))


class MultPolynomial:
    """Linear combination of words (tuples) of :class:`MultSymbol`."""

    __slots__ = ("words", "field")

    def __init__(self, words=None, field: FieldSpec = Q):
        self.field = field
        self.words: dict[tuple, object] = {}
        for w, c in dict(words or {}).items():
            c = field(c)
            if c:
                self.words[tuple(w)] = c

    @classmethod
    def one(cls, field=Q):
        return cls({(): 1}, field)

    @classmethod
    def lam(cls, alpha: MagmaPolynomial) -> "MultPolynomial":
        """L[alpha], expanded linearly over the terms of alpha."""
        return cls({(MultSymbol(L, t),): c for t, c in alpha.terms.items()}, alpha.field)

    @classmethod
    def rho(cls, beta: MagmaPolynomial) -> "MultPolynomial":
        return cls({(MultSymbol(R, t),): c for t, c in beta.terms.items()}, beta.field)

    def is_zero(self):
        return not self.words

    def __add__(self, other):
        F = self.field
        out = dict(self.words)
        for w, c in other.words.items():
            out[w] = F.add(out.get(w, F.zero), c)
        return MultPolynomial(out, F)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        F = self.field
        c = F(c)
        return MultPolynomial({w: F.mul(c, v) for w, v in self.words.items()}, F)

    def __mul__(self, other: "MultPolynomial"):
        F = self.field
        out: dict = {}
        for u, c in self.words.items():
            for v, d in other.words.items():
                out[u + v] = F.add(out.get(u + v, F.zero), F.mul(c, d))
        return MultPolynomial(out, F)

    def __eq__(self, other):
        if not isinstance(other, MultPolynomial):
            return NotImplemented
        return self.field == other.field and self.words == other.words

    def __hash__(self):
        return hash(frozenset(self.words.items()))

    def subscript_weights(self):
        """Total subscript weight of every word."""
        return {sum(s.term.weight for s in w) for w in self.words}

    def __str__(self):
        if not self.words:
            return "0"
        p = self.field.characteristic
        parts = []
        for i, w in enumerate(sorted(self.words, key=_word_key)):
            c = self.words[w]
            neg = p == 0 and c < 0
            mag = -c if neg else c
            ws = ".".join(map(str, w)) if w else "1"
            body = ws if mag == 1 else (str(mag) if not w else f"{mag}*{ws}")
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"{'-' if neg else '+'} {body}")
        return " ".join(parts)

    __repr__ = __str__


@lru_cache(maxsize=65536)
def _partial_term(t: Term, x: str) -> tuple:
    """Words of d t / d x with multiplicities, as a tuple of (word, count)."""
    if isinstance(t, Var):
        return (((), 1),) if t.name == x else ()
    acc: dict = {}
    rho_b = MultSymbol(R, t.right)
    lam_a = MultSymbol(L, t.left)
    for w, k in _partial_term(t.left, x):
        key = w + (rho_b,)
        acc[key] = acc.get(key, 0) + k
    for w, k in _partial_term(t.right, x):
        key = w + (lam_a,)
        acc[key] = acc.get(key, 0) + k
    return tuple(acc.items())


def partial(omega, x: str) -> MultPolynomial:
    """d omega / d x for a :class:`MagmaPolynomial` (or a bare term)."""
    if not isinstance(omega, MagmaPolynomial):
        omega = MagmaPolynomial.from_term(omega)
    F = omega.field
    out: dict = {}
    for t, c in omega.terms.items():
        for w, k in _partial_term(t, x):
            out[w] = F.add(out.get(w, F.zero), F.mul(c, F(k)))
    return MultPolynomial(out, F)


def specialize(mp: MultPolynomial, assignment: dict, algebra, order: MonomialOrder | None = None) -> FreePoly:
    """Evaluate subscripts in ``algebra`` and expand into letters l_k, r_k."""
    order = order or MonomialOrder(algebra.rank)
    F = algebra.field
    p = F.characteristic
    values: dict = {}

    def letters(sym: MultSymbol):
        if sym not in values:
            v = evaluate_term(sym.term, assignment, algebra)
            values[sym] = [(order.letter(sym.side, k + 1), c) for k, c in enumerate(v.coords) if c]
        return values[sym]

    out: dict = {}
    for word, c in mp.words.items():
        partials = {"": F(c)}
        for sym in word:
            nxt: dict = {}
            for prefix, a in partials.items():
                for ch, b in letters(sym):
                    nxt[prefix + ch] = nxt.get(prefix + ch, 0) + a * b
            partials = nxt
        for w, a in partials.items():
            out[w] = out.get(w, 0) + a
    if p:
        out = {w: a % p for w, a in out.items()}
    return FreePoly({w: a for w, a in out.items() if a}, F, raw=True)
