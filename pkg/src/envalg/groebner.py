"""Noncommutative Groebner bases in the free algebra on l_1, r_1, ..., l_n, r_n.

Completion is Buchberger's procedure on overlap differences, run in rounds:
each round takes every pending overlap of the smallest weight, reduces all
of them against a frozen snapshot of the basis, row-reduces the nonzero
results and adjoins them in increasing order of leading word.  The schedule
does not depend on ``threads``, so neither does the output.

A weight cap bounds the work.  For homogeneous input, overlaps heavier than
the cap are never formed and everything below ``cap + 1`` is certified.  For
inhomogeneous input every overlap is processed; reduced differences whose
leading word exceeds the cap are dropped and recorded, and any drop voids
the certificate.
"""

from __future__ import annotations

import heapq
import logging
import multiprocessing
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Iterable, Sequence

from .errors import CapTooSmall, NotCertified
from .freealg import FreePoly, MonomialOrder, desc_key, join_terms
from .scalars import FieldSpec

log = logging.getLogger(__name__)

_CACHE_LIMIT = 400_000


class Reducer:
    """Division by a set of monic polynomials with distinct leading words."""

    def __init__(self, field: FieldSpec, polys: Iterable[FreePoly] = ()):
        self.field = field
        self.rules: dict[str, tuple] = {}  # lm -> ((word, coeff), ...) tail
        self.lengths: tuple[int, ...] = ()
        self._cache: dict[str, dict] = {}
        for f in polys:
            self.add(f)

    def add(self, f: FreePoly):
        lm = f.lm
        self.rules[lm] = tuple((w, c) for w, c in f.terms.items() if w != lm)
        self._refresh()

    def remove(self, lm: str):
        del self.rules[lm]
        self._refresh()

    def _refresh(self):
        self.lengths = tuple(sorted({len(w) for w in self.rules}))
        self._cache.clear()

    def divisor(self, w: str):
        """Leftmost, then shortest, leading word dividing ``w``: (position, lm) or None."""
        rules = self.rules
        lengths = self.lengths
        n = len(w)
        for i in range(n):
            for k in lengths:
                if i + k > n:
                    break
                if w[i:i + k] in rules:
                    return i, w[i:i + k]
        return None

    def is_normal(self, w: str) -> bool:
        return self.divisor(w) is None

    def nf_word(self, w: str) -> dict:
        """Normal form of a single word (memoised for the current rule set)."""
        cache = self._cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        if len(cache) > _CACHE_LIMIT:
            cache.clear()
        F = self.field
        p = F.characteristic
        rules = self.rules
        stack = [w]
        while stack:
            x = stack[-1]
            if x in cache:
                stack.pop()
                continue
            d = self.divisor(x)
            if d is None:
                cache[x] = {x: F.one}
                stack.pop()
                continue
            i, lm = d
            s, t = x[:i], x[i + len(lm):]
            subs = [(s + u + t, c) for u, c in rules[lm]]
            missing = [y for y, _ in subs if y not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for y, c in subs:
                for z, e in cache[y].items():
                    acc[z] = acc.get(z, 0) - c * e
            if p:
                acc = {z: v % p for z, v in acc.items()}
            cache[x] = {z: v for z, v in acc.items() if v}
            stack.pop()
        return cache[w]

    def reduce_terms(self, terms: dict) -> dict:
        """Full normal form of a polynomial given as word -> coefficient."""
        F = self.field
        p = F.characteristic
        out: dict = {}
        for w, c in terms.items():
            for z, e in self.nf_word(w).items():
                out[z] = out.get(z, 0) + c * e
        if p:
            out = {z: v % p for z, v in out.items()}
        return {z: v for z, v in out.items() if v}

    def reduce_direct(self, terms: dict) -> dict:
        """Same result as :meth:`reduce_terms` without touching the memo."""
        F = self.field
        p = F.characteristic
        rules = self.rules
        f = dict(terms)
        heap = [desc_key(w) for w in f]
        heapq.heapify(heap)
        out: dict = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = f.pop(w, None)
            if c is None:
                continue
            d = self.divisor(w)
            if d is None:
                out[w] = c
                continue
            i, lm = d
            s, t = w[:i], w[i + len(lm):]
            for u, e in rules[lm]:
                y = s + u + t
                if y in f:
                    v = f[y] - c * e
                    if p:
                        v %= p
                    if v:
                        f[y] = v
                    else:
                        del f[y]
                else:
                    v = -c * e
                    if p:
                        v %= p
                    f[y] = v
                    heapq.heappush(heap, desc_key(y))
        return out

    def reduce(self, f: FreePoly) -> FreePoly:
        return FreePoly(self.reduce_terms(f.terms), self.field, raw=True)


def overlap_differences(g: FreePoly, h: FreePoly) -> list[FreePoly]:
    """All overlap differences of monic g, h (g's leading word on the left).

    For LM(g) = ab and LM(h) = bc with b, a, c nonempty this is g*c - a*h.
    When LM(h) is a factor of LM(g) = s LM(h) t the difference g - s*h*t is
    included as well.
    """
    a, b = g.lm, h.lm
    out = []
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            out.append(g.mul_words(right=b[k:]) - h.mul_words(left=a[:-k]))
    if len(b) <= len(a) and (g is not h and g != h):
        start = a.find(b)
        while start != -1:
            out.append(g - h.mul_words(a[:start], a[start + len(b):]))
            start = a.find(b, start + 1)
    return out


def _overlaps(a: str, b: str, same: bool):
    """(k, overlap word) for suffix of a == prefix of b of length k."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k, a + b[k:]


def echelon(polys: Sequence[FreePoly], field: FieldSpec) -> list[FreePoly]:
    """Row-reduce so that leading words are distinct; monic output sorted by LM."""
    F = field
    p = F.characteristic
    pivots: dict[str, dict] = {}
    for f in sorted(polys, key=lambda f: desc_key(f.lm)):
        t = dict(f.terms)
        heap = [desc_key(w) for w in t if w in pivots]
        heapq.heapify(heap)
        while heap:
            _, w = heapq.heappop(heap)
            c = t.pop(w, None)
            if c is None:
                continue
            for u, e in pivots[w].items():
                if u == w:
                    continue
                v = t.get(u, 0) - c * e
                if p:
                    v %= p
                if v:
                    if u not in t and u in pivots:
                        heapq.heappush(heap, desc_key(u))
                    t[u] = v
                else:
                    t.pop(u, None)
        if t:
            g = FreePoly(t, F, raw=True).monic()
            pivots[g.lm] = g.terms
    return [FreePoly(pivots[w], F, raw=True) for w in sorted(pivots, key=desc_key, reverse=True)]


# -- parallel reduction -------------------------------------------------------

_WORKER_REDUCER: Reducer | None = None


def _worker_reduce(chunk):
    return [_WORKER_REDUCER.reduce_terms(t) for t in chunk]


def _reduce_batch(reducer: Reducer, batch: list[dict], threads: int) -> tuple[list[dict], bool]:
    """Reduce every element of ``batch``; the flag says whether worker processes were used."""
    if threads <= 1 or len(batch) < 4 * threads:
        return [reducer.reduce_terms(t) for t in batch], False
    global _WORKER_REDUCER
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return [reducer.reduce_terms(t) for t in batch], False
    _WORKER_REDUCER = reducer
    size = -(-len(batch) // threads)
    chunks = [batch[i:i + size] for i in range(0, len(batch), size)]
    try:
        with ctx.Pool(threads) as pool:
            parts = pool.map(_worker_reduce, chunks)
    finally:
        _WORKER_REDUCER = None
    return [r for part in parts for r in part], True


# -- state --------------------------------------------------------------------

@dataclass
class PoincareSeries:
    counts: list[int]
    finite_certificate: int | None = None
    certified_below: int | None = None

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.counts):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            parts.append(str(c) if k == 0 else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(parts) if parts else "0"

    def certificate_line(self) -> str:
        if self.finite_certificate is not None:
            return f"finite-dimensional: max weight {self.finite_certificate - 1}"
        top = len(self.counts) - 1
        below = "inf" if self.certified_below is None else str(self.certified_below)
        return f"truncated at weight {top}, certified below {below}"


@dataclass
class GroebnerState:
    """A reduced (possibly truncated) Groebner basis.

    ``complete_below`` is None when the basis is a Groebner basis in every
    weight, otherwise the first weight that is not certified.
    """

    order: MonomialOrder
    field: FieldSpec
    basis: list[FreePoly]
    truncation_weight: int | None
    complete_below: int | None
    homogeneous: bool = True
    discarded: int = 0
    skipped_overlaps: int = 0
    rounds: int = 0
    stats: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.basis = sorted(self.basis, key=lambda g: desc_key(g.lm), reverse=True)
        self.reducer = Reducer(self.field, self.basis)
        self._zero_level: int | None = None
        if self.basis and self.complete_below != 0:
            top = self.truncation_weight if self.complete_below is None else self.complete_below - 1
            if top is None:
                top = max(len(g.lm) for g in self.basis)
            for w in range(0, top + 1):
                if self.count_normal(w) == 0:
                    self._zero_level = w
                    self.complete_below = None
                    break

    @property
    def leading_words(self) -> list[str]:
        return [g.lm for g in self.basis]

    @property
    def zero_level(self) -> int | None:
        """First weight with no normal words, if one was found."""
        return self._zero_level

    def is_certified(self, weight: int) -> bool:
        return self.complete_below is None or weight < self.complete_below

    def reduce(self, f: FreePoly) -> FreePoly:
        if f.field != self.field:
            raise ValueError("polynomial over a different field")
        return self.reducer.reduce(f)

    def contains(self, f: FreePoly) -> bool:
        return self.reduce(f).is_zero()

    def _extensions(self, word: str, letters: list[str]):
        rules = self.reducer.rules
        lengths = self.reducer.lengths
        for ch in letters:
            w = word + ch
            n = len(w)
            if not any(k <= n and w[n - k:] in rules for k in lengths):
                yield w

    def normal_monomials(self, weight: int) -> list[str]:
        """Normal words of the given weight, greatest first."""
        if not self.is_certified(weight):
            raise NotCertified(f"weight {weight} is not certified (complete below {self.complete_below})")
        letters = self.order.letters
        level = [""]
        for _ in range(weight):
            level = [w for u in level for w in self._extensions(u, letters)]
        return sorted(level, key=desc_key)

    def count_normal(self, weight: int) -> int:
        """Number of normal words of a weight, by dynamic programming on suffixes."""
        letters = self.order.letters
        rules = self.reducer.rules
        lengths = self.reducer.lengths
        keep = max(lengths, default=1) - 1
        states = {"": 1}
        for _ in range(weight):
            nxt: dict = {}
            for s, cnt in states.items():
                for ch in letters:
                    w = s + ch
                    n = len(w)
                    if any(k <= n and w[n - k:] in rules for k in lengths):
                        continue
                    key = w[-keep:] if keep else ""
                    nxt[key] = nxt.get(key, 0) + cnt
            states = nxt
            if not states:
                return 0
        return sum(states.values())

    def poincare(self, max_weight: int | None = None) -> PoincareSeries:
        """Per-weight normal-word counts up to a zero level or the certified range."""
        if self._zero_level is not None:
            z = self._zero_level
            counts = [self.count_normal(w) for w in range(z)]
            assert self.count_normal(z + 1) == 0, "zero level must propagate"
            return PoincareSeries(counts, finite_certificate=z, certified_below=None)
        top = max_weight if max_weight is not None else self.truncation_weight
        if self.complete_below is not None:
            top = self.complete_below - 1 if top is None else min(top, self.complete_below - 1)
        if top is None or top < 0:
            raise NotCertified("no certified weights and no zero level")
        counts = [self.count_normal(w) for w in range(top + 1)]
        return PoincareSeries(counts, certified_below=self.complete_below)

    def dimension(self) -> int:
        ps = self.poincare()
        if ps.finite_certificate is None:
            raise NotCertified("quotient is not certified finite-dimensional")
        return ps.total

    def format_basis(self) -> str:
        return "\n".join(g.format(self.order) for g in self.basis)


# -- completion ---------------------------------------------------------------

class _Completion:
    def __init__(self, polys: list[FreePoly], order: MonomialOrder, field: FieldSpec,
                 cap: int, homogeneous: bool, threads: int):
        self.order = order
        self.field = field
        self.cap = cap
        self.homogeneous = homogeneous
        self.threads = threads
        self.polys: dict[int, FreePoly] = {}
        self.by_lm: dict[str, int] = {}
        self.next_id = 0
        self.pairs: list = []
        self.reducer = Reducer(field)
        self.discarded = 0
        self.skipped = 0
        self.rounds = 0
        self.spolys = 0
        self.pooled_rounds = 0
        self._adjoin(polys)

    def _push_pairs(self, i: int):
        a = self.polys[i].lm
        for j, g in list(self.polys.items()):
            b = g.lm
            for k, word in _overlaps(a, b, i == j):
                self._push(len(word), word, i, j, k)
            if i != j:
                for k, word in _overlaps(b, a, False):
                    self._push(len(word), word, j, i, k)

    def _push(self, weight, word, i, j, k):
        if self.homogeneous and weight > self.cap:
            self.skipped += 1
            return
        heapq.heappush(self.pairs, (weight, desc_key(word), i, j, k))

    def _adjoin(self, polys: list[FreePoly]):
        queue = echelon([f for f in polys if f], self.field)
        queue.reverse()  # smallest leading word first
        while queue:
            f = queue.pop(0)
            terms = self.reducer.reduce_direct(f.terms)
            if not terms:
                continue
            f = FreePoly(terms, self.field, raw=True).monic()
            lm = f.lm
            if len(lm) > self.cap:
                self.discarded += 1
                log.debug("discarding element with leading word of weight %d", len(lm))
                continue
            evicted = [w for w in self.by_lm if lm in w]
            for w in evicted:
                j = self.by_lm.pop(w)
                queue.append(self.polys.pop(j))
                self.reducer.remove(w)
            if evicted:
                queue.sort(key=lambda g: desc_key(g.lm), reverse=True)
            i = self.next_id
            self.next_id += 1
            self.polys[i] = f
            self.by_lm[lm] = i
            self.reducer.add(f)
            self._push_pairs(i)

    def run(self):
        while self.pairs:
            weight = self.pairs[0][0]
            batch = []
            seen = set()
            while self.pairs and self.pairs[0][0] == weight:
                _, _, i, j, k = heapq.heappop(self.pairs)
                if i not in self.polys or j not in self.polys or (i, j, k) in seen:
                    continue
                seen.add((i, j, k))
                g, h = self.polys[i], self.polys[j]
                a, b = g.lm, h.lm
                diff = g.mul_words(right=b[k:]) - h.mul_words(left=a[:-k])
                if diff:
                    batch.append(diff.terms)
            if not batch:
                continue
            self.rounds += 1
            self.spolys += len(batch)
            reduced, pooled = _reduce_batch(self.reducer, batch, self.threads)
            self.pooled_rounds += pooled
            new = [FreePoly(t, self.field, raw=True) for t in reduced if t]
            log.info("round %d: weight %d, %d overlaps, %d new, basis %d",
                     self.rounds, weight, len(batch), len(new), len(self.polys))
            if new:
                self._adjoin(new)

    def reduced_basis(self) -> list[FreePoly]:
        out = []
        F = self.field
        for f in self.polys.values():
            lm = f.lm
            tail = {w: c for w, c in f.terms.items() if w != lm}
            tail = self.reducer.reduce_terms(tail)
            tail[lm] = F.one
            out.append(FreePoly(tail, F, raw=True))
        return out


def complete(relations, order: MonomialOrder | None = None, max_weight: int | None = None,
             threads: int = 1, field: FieldSpec | None = None) -> GroebnerState:
    """Complete a generating set to a (weight-capped) reduced Groebner basis.

    ``relations`` is a :class:`~envalg.relations.RelationSet` or a list of
    :class:`FreePoly`; for a plain list pass ``order`` and ``field``.
    """
    if hasattr(relations, "polys"):
        order = order or relations.order
        field = field or relations.field
        polys = relations.polys
    else:
        polys = list(relations)
        if field is None:
            field = polys[0].field if polys else None
    if order is None or field is None:
        raise ValueError("order and field are required")
    polys = [f.monic() for f in polys if f]
    homogeneous = all(f.is_homogeneous() for f in polys)
    top = max((len(f.lm) for f in polys), default=0)
    if max_weight is None:
        max_weight = max(2 * order.n + 2, top)
    if top > max_weight:
        raise CapTooSmall(f"relations reach weight {top} but the cap is {max_weight}")
    engine = _Completion(polys, order, field, max_weight, homogeneous, threads)
    engine.run()
    if homogeneous:
        complete_below = None if engine.skipped == 0 else max_weight + 1
    else:
        complete_below = None if engine.discarded == 0 else 0
    stats = {"overlaps": engine.spolys, "basis_size": len(engine.polys),
             "pooled_rounds": engine.pooled_rounds}
    return GroebnerState(order, field, engine.reduced_basis(), max_weight, complete_below,
                         homogeneous=homogeneous, discarded=engine.discarded,
                         skipped_overlaps=engine.skipped, rounds=engine.rounds, stats=stats)


def alt_abelian_rank(n: int, k: int) -> int:
    """Closed-form weight-k dimension of the enveloping algebra of abelian K^n in Alt."""
    if k == 0:
        return 1
    if k == 1:
        return 2 * n
    if k == 2:
        return (3 * n * n - n) // 2
    return 2 * comb(n, k)


def verify_basis(state: GroebnerState, relations: Iterable[FreePoly] = ()) -> list[str]:
    """Independent completeness check: returns a list of problems (empty if none).

    Every given relation must reduce to zero and every overlap difference of
    the basis must reduce to zero.  Only meaningful for a certified state.
    """
    problems = []
    red = state.reducer
    for f in relations:
        if red.reduce_direct(f.terms):
            problems.append(f"relation does not reduce to 0: {f.format(state.order)}")
    basis = state.basis
    for g in basis:
        for h in basis:
            for d in overlap_differences(g, h):
                if red.reduce_direct(d.terms):
                    problems.append(f"overlap of {g.lm!r} and {h.lm!r} does not reduce to 0")
    return problems
