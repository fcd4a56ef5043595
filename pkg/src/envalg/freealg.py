"""Words and polynomials in the free associative algebra on l_1, r_1, ..., l_n, r_n.

Words are encoded as Python strings, one character per letter.  The
character codes follow the generator rank of the :class:`MonomialOrder`: the
greatest letter gets the smallest code point.  With that encoding the
weight-then-left-lex order becomes "shorter is smaller; among equal lengths,
smaller string is *greater*", so ``(-len(w), w)`` sorts words from greatest to
least and factor tests are plain substring tests.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .scalars import Q, FieldSpec

L, R = "l", "r"

_BASE = 0x100


def desc_key(w: str):
    """Sort key listing words from greatest to least."""
    return (-len(w), w)


class MonomialOrder:
    """Weight-first, then left-lexicographic order on words.

    ``rank`` lists the letters from greatest to least as ``(side, index)``
    pairs with 1-based indices; the default is l_1 > r_1 > l_2 > r_2 > ...
    """

    def __init__(self, n: int, rank: Sequence[tuple[str, int]] | None = None):
        if rank is None:
            rank = [(s, i) for i in range(1, n + 1) for s in (L, R)]
        rank = [(s, int(i)) for s, i in rank]
        if sorted(rank) != sorted((s, i) for i in range(1, n + 1) for s in (L, R)):
            raise ValueError("rank must list every l_i and r_i exactly once")
        self.n = n
        self.rank = tuple(rank)
        self._code = {sym: chr(_BASE + k) for k, sym in enumerate(self.rank)}
        self._sym = {c: sym for sym, c in self._code.items()}
        self._name = {c: f"{s}{i}" for c, (s, i) in self._sym.items()}
        self._by_name = {v: k for k, v in self._name.items()}

    @classmethod
    def reversed_indices(cls, n: int) -> "MonomialOrder":
        """l_n > r_n > ... > l_1 > r_1."""
        return cls(n, [(s, i) for i in range(n, 0, -1) for s in (L, R)])

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.rank == other.rank

    def __hash__(self):
        return hash(self.rank)

    def __repr__(self):
        return f"MonomialOrder({self.n}, rank={' > '.join(self.name(c) for c in self.letters)})"

    @property
    def letters(self) -> list[str]:
        """All letters, greatest first."""
        return [self._code[s] for s in self.rank]

    def letter(self, side: str, index: int) -> str:
        return self._code[(side, index)]

    def l(self, i: int) -> str:
        return self._code[(L, i)]

    def r(self, i: int) -> str:
        return self._code[(R, i)]

    def side_index(self, ch: str) -> tuple[str, int]:
        return self._sym[ch]

    def name(self, ch: str) -> str:
        return self._name[ch]

    def format_word(self, w: str) -> str:
        return ".".join(self._name[c] for c in w) if w else "1"

    def parse_word(self, text: str) -> str:
        text = text.strip()
        if text in ("", "1"):
            return ""
        try:
            return "".join(self._by_name[p.strip()] for p in text.split("."))
        except KeyError as e:
            raise ValueError(f"unknown letter {e.args[0]!r} in word {text!r}") from None

    def compare(self, u: str, v: str) -> int:
        """-1, 0, 1 as u <, =, > v."""
        if u == v:
            return 0
        return 1 if desc_key(u) < desc_key(v) else -1


class FreePoly:
    """A polynomial in the free algebra: ``terms`` maps word -> nonzero raw coefficient."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field: FieldSpec = Q, *, raw=False):
        self.field = field
        if raw:
            self.terms = terms if terms is not None else {}
            return
        self.terms = {}
        if terms:
            for w, c in dict(terms).items():
                c = field(c)
                if c:
                    self.terms[w] = c

    @classmethod
    def word(cls, w: str, field: FieldSpec = Q, coeff=1) -> "FreePoly":
        return cls({w: coeff}, field)

    @classmethod
    def one(cls, field: FieldSpec = Q) -> "FreePoly":
        return cls({"": 1}, field)

    @classmethod
    def zero(cls, field: FieldSpec = Q) -> "FreePoly":
        return cls({}, field, raw=True)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> str:
        return min(self.terms, key=desc_key)

    @property
    def lc(self):
        return self.terms[self.lm]

    @property
    def weight(self) -> int:
        return max(map(len, self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def monic(self) -> "FreePoly":
        F = self.field
        c = F.inv(self.lc)
        if c == 1:
            return self
        return FreePoly({w: F.mul(c, v) for w, v in self.terms.items()}, F, raw=True)

    def sorted_words(self) -> list[str]:
        return sorted(self.terms, key=desc_key)

    def scale(self, c) -> "FreePoly":
        F = self.field
        c = F(c)
        if not c:
            return FreePoly.zero(F)
        return FreePoly({w: F.mul(c, v) for w, v in self.terms.items()}, F, raw=True)

    def _combine(self, other: "FreePoly", sign: int) -> "FreePoly":
        p = self.field.characteristic
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c if sign > 0 else out.get(w, 0) - c
            if p:
                v %= p
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FreePoly(out, self.field, raw=True)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, FreePoly):
            return self.scale(other)
        p = self.field.characteristic
        out: dict = {}
        for u, c in self.terms.items():
            for v, d in other.terms.items():
                w = u + v
                out[w] = out.get(w, 0) + c * d
        if p:
            out = {w: x % p for w, x in out.items()}
        return FreePoly({w: x for w, x in out.items() if x}, self.field, raw=True)

    __rmul__ = scale

    def mul_words(self, left: str = "", right: str = "") -> "FreePoly":
        """left * self * right for words left, right."""
        return FreePoly({left + w + right: c for w, c in self.terms.items()}, self.field, raw=True)

    def __eq__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def format(self, order: MonomialOrder) -> str:
        return format_terms(self.terms, self.field, order.format_word)

    def __repr__(self):
        return f"FreePoly({len(self.terms)} terms over {self.field})"


def format_terms(terms: dict, field: FieldSpec, word_fmt) -> str:
    return join_terms([(word_fmt(w), terms[w]) for w in sorted(terms, key=desc_key)], field)


def join_terms(pairs, field: FieldSpec) -> str:
    """Render ``[(label, coeff), ...]`` as ``a - 2*b + 3``; label ``"1"`` is the unit."""
    parts = []
    p = field.characteristic
    for label, c in pairs:
        neg = p == 0 and c < 0
        mag = -c if neg else c
        if mag == 1:
            body = label
        elif label == "1":
            body = str(mag)
        else:
            body = f"{mag}*{label}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts) if parts else "0"


def parse_poly(text: str, order: MonomialOrder, field: FieldSpec = Q) -> FreePoly:
    """Parse output of :meth:`FreePoly.format`, e.g. ``"l1.r2 - 3/2*r1 + 1"``."""
    from fractions import Fraction

    out: dict = {}
    sign = 1
    for tok in re.findall(r"[+-]|[^\s+-]+", text):
        if tok in "+-":
            sign = -sign if tok == "-" else sign
            continue
        if "*" in tok:
            c, w = tok.split("*", 1)
            coeff = Fraction(c)
        elif tok[0].isdigit():
            coeff, w = Fraction(tok), ""
        else:
            coeff, w = Fraction(1), tok
        word = order.parse_word(w)
        out[word] = field.add(out.get(word, field.zero), field(sign * coeff))
        sign = 1
    return FreePoly(out, field)


def words_of_weight(letters: Iterable[str], w: int) -> list[str]:
    from itertools import product

    return ["".join(t) for t in product(list(letters), repeat=w)]
