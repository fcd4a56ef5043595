"""Generators of the ideal defining the enveloping algebra of a variety at an algebra.

For every equation ``omega`` and variable ``x`` we differentiate, put every
variable at the generic point ``sum_i t_{v,i} e_i``, expand the multiplication
symbols over the basis, and take the coefficient of each parameter monomial
as one relation in the free algebra on l_1, r_1, ..., l_n, r_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import StructureAlgebra, format_param_monomial, generic_values
from .derive import partial
from .freealg import L, FreePoly, MonomialOrder, desc_key, join_terms
from .magma import MagmaPolynomial


@dataclass(frozen=True)
class Relation:
    poly: FreePoly
    provenance: str = ""


@dataclass
class RelationSet:
    relations: list[Relation]
    order: MonomialOrder
    field: object
    warnings: list[str] = dc_field(default_factory=list)

    def __len__(self):
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    @property
    def polys(self) -> list[FreePoly]:
        return [r.poly for r in self.relations]

    def by_weight(self) -> dict[int, list[Relation]]:
        out: dict[int, list[Relation]] = {}
        for rel in self.relations:
            out.setdefault(len(rel.poly.lm), []).append(rel)
        return dict(sorted(out.items()))

    def is_homogeneous(self) -> bool:
        return all(r.poly.is_homogeneous() for r in self.relations)

    def max_weight(self) -> int:
        return max((len(r.poly.lm) for r in self.relations), default=0)

    def format(self, provenance: bool = True, q_form: bool = False) -> str:
        lines = [f"# {w}" for w in self.warnings]
        for w, rels in self.by_weight().items():
            lines.append(f"# weight {w}: {len(rels)} relations")
            for rel in rels:
                body = format_q(rel.poly, self.order) if q_form else rel.poly.format(self.order)
                lines.append(f"{body}    # {rel.provenance}" if provenance and rel.provenance else body)
        return "\n".join(lines)


def _sorted_relations(rels):
    return sorted(rels, key=lambda r: (len(r.poly.lm), desc_key(r.poly.lm)))


def generate_relations(equations: Sequence[MagmaPolynomial], alg: StructureAlgebra,
                       order: MonomialOrder | None = None, interreduce: bool = True) -> RelationSet:
    """Differentiate every equation and extract coefficient relations.

    With ``interreduce`` (default) the result is passed through
    :func:`interreduce_linear`.
    """
    order = order or MonomialOrder(alg.rank)
    F = alg.field
    p = F.characteristic
    n = alg.rank
    rels: list[Relation] = []
    max_degree = 0
    for ei, omega in enumerate(equations):
        if omega.field != F:
            omega = MagmaPolynomial({t: F(int(c)) if p else c for t, c in omega.terms.items()}, F)
        variables = omega.variables()
        for x in variables:
            mp = partial(omega, x)
            terms = {s.term for w in mp.words for s in w}
            vals = generic_values(terms, variables, alg)
            expanded: dict[tuple, dict[str, object]] = {}
            for word, c in mp.words.items():
                acc = {(): {"": c}}
                for sym in word:
                    nxt: dict = {}
                    for m1, polys in acc.items():
                        for m2, vec in vals[sym.term].items():
                            m = tuple(sorted(m1 + m2))
                            dest = nxt.setdefault(m, {})
                            for k, d in vec.items():
                                ch = order.letter(sym.side, k + 1)
                                for pre, a in polys.items():
                                    dest[pre + ch] = dest.get(pre + ch, 0) + a * d
                    acc = nxt
                for m, polys in acc.items():
                    dest = expanded.setdefault(m, {})
                    for w, a in polys.items():
                        dest[w] = dest.get(w, 0) + a
            for m in sorted(expanded):
                terms_ = expanded[m]
                if p:
                    terms_ = {w: a % p for w, a in terms_.items()}
                poly = FreePoly({w: a for w, a in terms_.items() if a}, F, raw=True)
                if poly.is_zero():
                    continue
                for v in range(len(variables)):
                    max_degree = max(max_degree, sum(1 for pid in m if pid // n == v))
                prov = f"eq{ei + 1} [{omega}] d/d{x} coeff {format_param_monomial(m, variables, alg)}"
                rels.append(Relation(poly.monic(), prov))
    rs = RelationSet(rels, order, F)
    if p and p <= max_degree:
        rs.warnings.append(
            f"characteristic {p} does not exceed the parameter degree {max_degree}: extracted "
            "relations may generate a larger ideal than pointwise evaluation")
    return interreduce_linear(rs) if interreduce else rs


def _linear_reduce(terms: dict, pivots: dict, F) -> dict:
    """Eliminate every pivot word (exact match) from ``terms``."""
    terms = dict(terms)
    while True:
        hits = [w for w in terms if w in pivots]
        if not hits:
            return terms
        w = min(hits, key=desc_key)
        c = terms[w]
        for u, d in pivots[w].terms.items():
            v = F.sub(terms.get(u, F.zero), F.mul(c, d))
            if v:
                terms[u] = v
            else:
                terms.pop(u, None)


def interreduce_linear(rs: RelationSet) -> RelationSet:
    """Row-reduce the relations: distinct leading words, each appearing only in its own row."""
    F = rs.field
    pivots: dict[str, FreePoly] = {}
    prov: dict[str, str] = {}
    for rel in rs.relations:
        terms = _linear_reduce(rel.poly.terms, pivots, F)
        if not terms:
            continue
        poly = FreePoly(terms, F, raw=True).monic()
        pivots[poly.lm] = poly
        prov[poly.lm] = rel.provenance
    for lm in sorted(pivots, key=desc_key, reverse=True):
        others = {k: v for k, v in pivots.items() if k != lm}
        tail = {w: c for w, c in pivots[lm].terms.items() if w != lm}
        tail = _linear_reduce(tail, others, F)
        tail[lm] = F.one
        pivots[lm] = FreePoly(tail, F, raw=True)
    rels = _sorted_relations(Relation(pivots[lm], prov[lm]) for lm in pivots)
    return RelationSet(rels, rs.order, F, list(rs.warnings))


def format_q(poly: FreePoly, order: MonomialOrder) -> str:
    """Display with every l_i rewritten as q_i - r_i."""
    F = poly.field
    out: dict[tuple, object] = {}
    for w, c in poly.terms.items():
        acc = {(): c}
        for ch in w:
            side, i = order.side_index(ch)
            opts = [(f"q{i}", F.one), (f"r{i}", F.neg(F.one))] if side == L else [(f"r{i}", F.one)]
            acc = {k + (nm,): F.mul(a, b) for k, a in acc.items() for nm, b in opts}
        for k, a in acc.items():
            out[k] = F.add(out.get(k, F.zero), a)

    def key(k):
        return (-len(k), [(int(nm[1:]), nm[0] != "q") for nm in k])

    pairs = [(".".join(k) or "1", out[k]) for k in sorted(out, key=key) if out[k]]
    return join_terms(pairs, F)


def parse_relations(text: str, order: MonomialOrder, field) -> list[FreePoly]:
    """Read an exported relation/basis listing (``#`` comments ignored)."""
    from .freealg import parse_poly

    polys = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            polys.append(parse_poly(line, order, field))
    return polys
