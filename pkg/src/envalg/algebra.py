"""Finite-rank algebras given by structure constants.

``table[i][j]`` holds the coordinates of ``e_i * e_j``.  Built-in algebras:
``abelian:<n>`` (trivial product), ``complex`` (basis 1, i), ``quaternion``
(basis 1, i, j, k) and ``octonion`` (basis 1, e1..e7; see
:data:`OCTONION_TRIPLES`).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from .errors import BadStructureFile, RankMismatch, UnknownAlgebra
from .magma import MagmaPolynomial, Term, Var, evaluate_term
from .scalars import Q, FieldSpec

# Oriented Fano-plane lines: e_a e_b = e_c for (a, b, c) and cyclic shifts.
# This is the table printed on the Wikipedia "Octonion" page.
OCTONION_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: "StructureAlgebra", coords):
        coords = tuple(coords)
        if len(coords) != algebra.rank:
            raise RankMismatch(f"expected {algebra.rank} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = coords

    def _check(self, other):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise RankMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        F = self.algebra.field
        return AlgebraElement(self.algebra, (F.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        F = self.algebra.field
        return AlgebraElement(self.algebra, (F.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        F = self.algebra.field
        c = F(c)
        return AlgebraElement(self.algebra, (F.mul(c, a) for a in self.coords))

    def __mul__(self, other):
        return self.algebra.multiply(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return format_vector(dict(enumerate(self.coords)), self.algebra.basis, self.algebra.field)

    def __repr__(self):
        return f"AlgebraElement({self})"


def format_vector(vec: dict, names: Sequence[str], field: FieldSpec) -> str:
    parts = []
    p = field.characteristic
    for k in sorted(vec):
        c = vec[k]
        if not c:
            continue
        neg = p == 0 and c < 0
        mag = -c if neg else c
        body = names[k] if mag == 1 else f"{mag}*{names[k]}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts) if parts else "0"


class StructureAlgebra:
    """A finite-dimensional algebra over a field with basis ``basis``."""

    def __init__(self, field: FieldSpec, basis: Sequence[str], table, name: str = ""):
        n = len(basis)
        self.field = field
        self.basis = tuple(basis)
        self.name = name or f"rank-{n} algebra"
        if len(table) != n or any(len(row) != n for row in table):
            raise RankMismatch(f"table must be {n}x{n}")
        rows = []
        for row in table:
            r = []
            for entry in row:
                if len(entry) != n:
                    raise RankMismatch(f"table entries must have {n} coordinates")
                r.append(tuple(field(c) for c in entry))
            rows.append(tuple(r))
        self.table = tuple(rows)
        # sparse products: _prod[i][j] = ((k, c), ...)
        self._prod = [[tuple((k, c) for k, c in enumerate(e) if c) for e in row] for row in self.table]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, StructureAlgebra):
            return NotImplemented
        return (self.field, self.basis, self.table) == (other.field, other.basis, other.table)

    def __hash__(self):
        return hash((self.field, self.basis, self.table))

    def __repr__(self):
        return f"StructureAlgebra({self.name!r}, rank={self.rank}, field={self.field})"

    def is_abelian(self) -> bool:
        return not any(e for row in self._prod for e in row)

    def element(self, coords) -> AlgebraElement:
        return AlgebraElement(self, (self.field(c) for c in coords))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (self.field.zero,) * self.rank)

    def e(self, i: int) -> AlgebraElement:
        """Basis element, 0-based index."""
        F = self.field
        return AlgebraElement(self, (F.one if k == i else F.zero for k in range(self.rank)))

    def basis_product(self, i: int, j: int):
        return self._prod[i][j]

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        if a.algebra != self or b.algebra != self:
            raise RankMismatch("operands do not belong to this algebra")
        out = self.mul_sparse(
            {i: c for i, c in enumerate(a.coords) if c},
            {j: d for j, d in enumerate(b.coords) if d},
        )
        F = self.field
        return AlgebraElement(self, (out.get(k, F.zero) for k in range(self.rank)))

    def mul_sparse(self, a: dict, b: dict) -> dict:
        """Product of coordinate dicts index -> coefficient."""
        F = self.field
        p = F.characteristic
        out: dict = {}
        for i, c in a.items():
            row = self._prod[i]
            for j, d in b.items():
                cd = c * d
                for k, s in row[j]:
                    out[k] = out.get(k, 0) + cd * s
        if p:
            out = {k: v % p for k, v in out.items()}
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "basis": list(self.basis),
            "table": [[[str(c) for c in e] for e in row] for row in self.table],
        }


# -- generic (formal-parameter) evaluation --------------------------------

def generic_values(terms, variables: Sequence[str], algebra: StructureAlgebra) -> dict:
    """Evaluate magma terms at the generic point x -> sum_i t_{x,i} e_i.

    Returns ``{term: {monomial: {k: coeff}}}`` where a monomial is a sorted
    tuple of parameter ids ``var_index * rank + basis_index``.
    """
    n = algebra.rank
    F = algebra.field
    p = F.characteristic
    vindex = {v: i for i, v in enumerate(variables)}
    memo: dict = {}

    def ev(t: Term):
        if t in memo:
            return memo[t]
        if isinstance(t, Var):
            base = vindex[t.name] * n
            val = {(base + i,): {i: F.one} for i in range(n)}
        else:
            left, right = ev(t.left), ev(t.right)
            val = {}
            for m1, v1 in left.items():
                for m2, v2 in right.items():
                    prod = algebra.mul_sparse(v1, v2)
                    if not prod:
                        continue
                    m = tuple(sorted(m1 + m2))
                    acc = val.setdefault(m, {})
                    for k, c in prod.items():
                        acc[k] = acc.get(k, 0) + c
            for m in list(val):
                acc = {k: (c % p if p else c) for k, c in val[m].items()}
                acc = {k: c for k, c in acc.items() if c}
                if acc:
                    val[m] = acc
                else:
                    del val[m]
        memo[t] = val
        return val

    return {t: ev(t) for t in terms}


def generic_evaluate(poly: MagmaPolynomial, variables: Sequence[str], algebra: StructureAlgebra) -> dict:
    """``{monomial: {k: coeff}}`` for the polynomial at the generic point."""
    F = algebra.field
    p = F.characteristic
    vals = generic_values(list(poly.terms), variables, algebra)
    out: dict = {}
    for t, c in poly.terms.items():
        for m, vec in vals[t].items():
            acc = out.setdefault(m, {})
            for k, d in vec.items():
                acc[k] = acc.get(k, 0) + c * d
    res = {}
    for m, acc in out.items():
        acc = {k: (v % p if p else v) for k, v in acc.items()}
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            res[m] = acc
    return res


def format_param_monomial(m: tuple, variables: Sequence[str], algebra: StructureAlgebra) -> str:
    n = algebra.rank
    if not m:
        return "1"
    parts = []
    for pid, grp in itertools.groupby(m):
        e = len(list(grp))
        v, i = divmod(pid, n)
        s = f"{variables[v]}[{algebra.basis[i]}]"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


# -- identity checking ------------------------------------------------------

@dataclass
class SatisfactionReport:
    verdict: str  # "HoldsIdentically" | "Fails"
    equation: str = ""
    monomial: str | None = None
    vector: str | None = None
    assignment: dict | None = None
    value: str | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict == "HoldsIdentically"

    def to_json(self) -> dict:
        out = {"equation": self.equation, "verdict": self.verdict}
        if not self.holds:
            out["monomial"] = self.monomial
            out["coefficient"] = self.vector
            if self.assignment is not None:
                out["assignment"] = {k: str(v) for k, v in self.assignment.items()}
                out["value"] = self.value
        return out

    def __str__(self):
        if self.holds:
            return f"PASS  {self.equation}: holds identically"
        s = f"FAIL  {self.equation}: coefficient of {self.monomial} is {self.vector}"
        if self.assignment is not None:
            a = ", ".join(f"{k}={v}" for k, v in self.assignment.items())
            s += f"; witness {a} gives {self.value}"
        return s


def _candidate_elements(alg: StructureAlgebra):
    n = alg.rank
    yield from (alg.e(i) for i in range(n))
    for i, j in itertools.combinations(range(n), 2):
        yield alg.e(i) + alg.e(j)


def find_counterexample(alg: StructureAlgebra, eq: MagmaPolynomial, variables=None,
                        max_tries: int = 20000, seed: int = 0):
    """Search for an assignment where ``eq`` does not vanish."""
    variables = variables or eq.variables()
    cands = list(_candidate_elements(alg))
    tries = 0
    for combo in itertools.product(cands, repeat=len(variables)):
        tries += 1
        if tries > max_tries:
            break
        assignment = dict(zip(variables, combo))
        val = evaluate_term(eq, assignment, alg)
        if val:
            return assignment, val
    rng = random.Random(seed)
    F = alg.field
    pool = list(F.elements()) if F.characteristic else range(-3, 4)
    for _ in range(500):
        assignment = {v: alg.element(rng.choice(pool) for _ in range(alg.rank)) for v in variables}
        val = evaluate_term(eq, assignment, alg)
        if val:
            return assignment, val
    return None


def check_identity(alg: StructureAlgebra, eq: MagmaPolynomial, variables=None) -> SatisfactionReport:
    """Decide whether ``alg`` satisfies ``eq`` by generic-point expansion."""
    variables = tuple(variables or eq.variables())
    if eq.field != alg.field:
        eq = MagmaPolynomial({t: _reinterpret(c, alg.field) for t, c in eq.terms.items()}, alg.field)
    expansion = generic_evaluate(eq, variables, alg)
    if not expansion:
        return SatisfactionReport("HoldsIdentically", str(eq))
    m = min(expansion)
    report = SatisfactionReport(
        "Fails", str(eq),
        monomial=format_param_monomial(m, variables, alg),
        vector=format_vector(expansion[m], alg.basis, alg.field),
    )
    found = find_counterexample(alg, eq, variables)
    if found is not None:
        report.assignment, val = found
        report.value = str(val)
    else:
        report.notes.append("no concrete witness found (field may be too small to specialize)")
    return report


def _reinterpret(c, field: FieldSpec):
    return field(Fraction(int(c.numerator), int(c.denominator))) if hasattr(c, "numerator") else field(c)


# -- constructors -----------------------------------------------------------

def abelian(n: int, field: FieldSpec = Q) -> StructureAlgebra:
    zero = (0,) * n
    return StructureAlgebra(field, [f"e{i}" for i in range(1, n + 1)],
                            [[zero] * n for _ in range(n)], name=f"abelian:{n}")


def _signed_table(names, products):
    """products: {(a, b): (sign, c)} on indices into names."""
    n = len(names)
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (a, b), (sign, c) in products.items():
        table[a][b][c] = sign
    return table


def complex_algebra(field: FieldSpec = Q) -> StructureAlgebra:
    prods = {(0, 0): (1, 0), (0, 1): (1, 1), (1, 0): (1, 1), (1, 1): (-1, 0)}
    return StructureAlgebra(field, ["1", "i"], _signed_table("1i", prods), name="complex")


def quaternion(field: FieldSpec = Q) -> StructureAlgebra:
    names = ["1", "i", "j", "k"]
    prods = {}
    for a in range(4):
        prods[(0, a)] = (1, a)
        prods[(a, 0)] = (1, a)
    for a in (1, 2, 3):
        prods[(a, a)] = (-1, 0)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        prods[(a, b)] = (1, c)
        prods[(b, a)] = (-1, c)
    return StructureAlgebra(field, names, _signed_table(names, prods), name="quaternion")


def octonion(field: FieldSpec = Q) -> StructureAlgebra:
    names = ["1"] + [f"e{i}" for i in range(1, 8)]
    prods = {}
    for a in range(8):
        prods[(0, a)] = (1, a)
        prods[(a, 0)] = (1, a)
    for a in range(1, 8):
        prods[(a, a)] = (-1, 0)
    for a, b, c in OCTONION_TRIPLES:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            prods[(x, y)] = (1, z)
            prods[(y, x)] = (-1, z)
    return StructureAlgebra(field, names, _signed_table(names, prods), name="octonion")


def ks_linearize(elements: Sequence[str], table, field: FieldSpec = Q, name: str = "") -> StructureAlgebra:
    """Linear extension of a finite magma; ``table[s][t]`` is the index of s*t."""
    n = len(elements)
    if len(table) != n or any(len(row) != n for row in table):
        raise BadStructureFile(f"magma table must be {n}x{n}")
    t = [[[0] * n for _ in range(n)] for _ in range(n)]
    for s in range(n):
        for u in range(n):
            k = table[s][u]
            if not isinstance(k, int) or not 0 <= k < n:
                raise BadStructureFile(f"magma table entry {k!r} out of range")
            t[s][u][k] = 1
    return StructureAlgebra(field, list(elements), t, name=name or "magma")


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    data = resources.files("envalg") / "data" / path
    if data.is_file():
        return Path(str(data))
    raise BadStructureFile(f"no such file: {path}")


def _coeff(c):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise BadStructureFile(f"coefficient {c!r} must be an integer or 'a/b' string")
    try:
        return Fraction(c)
    except (ValueError, ZeroDivisionError):
        raise BadStructureFile(f"bad coefficient {c!r}") from None


def load_structure_file(path: str, field: FieldSpec | None = None) -> StructureAlgebra:
    try:
        data = json.loads(_resolve(path).read_text())
    except json.JSONDecodeError as e:
        raise BadStructureFile(f"{path}: {e}") from None
    try:
        basis = data["basis"]
        table = data["table"]
    except (KeyError, TypeError):
        raise BadStructureFile(f"{path}: need 'basis' and 'table'") from None
    fld = field
    if "field" in data:
        file_field = FieldSpec.parse(data["field"])
        if fld is None:
            fld = file_field
    fld = fld or Q
    n = len(basis)
    if not isinstance(table, list) or len(table) != n:
        raise BadStructureFile(f"{path}: table must have {n} rows")
    rows = []
    for row in table:
        if not isinstance(row, list) or len(row) != n:
            raise BadStructureFile(f"{path}: every row needs {n} entries")
        r = []
        for entry in row:
            if not isinstance(entry, list) or len(entry) != n:
                raise BadStructureFile(f"{path}: every entry needs {n} coordinates")
            r.append([_coeff(c) for c in entry])
        rows.append(r)
    return StructureAlgebra(fld, basis, rows, name=f"file:{path}")


def load_magma_file(path: str, field: FieldSpec = Q) -> StructureAlgebra:
    try:
        data = json.loads(_resolve(path).read_text())
        return ks_linearize(data["elements"], data["table"], field, name=f"magma:{path}")
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise BadStructureFile(f"{path}: {e}") from None


def builtin(name: str, field: FieldSpec = Q) -> StructureAlgebra:
    """Resolve ``abelian:n``, ``complex``, ``quaternion``, ``octonion``,
    ``file:<path>`` or ``magma:<path>``."""
    kind, _, arg = name.partition(":")
    if kind == "abelian":
        try:
            n = int(arg)
        except ValueError:
            raise UnknownAlgebra(f"abelian needs a rank, got {name!r}") from None
        return abelian(n, field)
    if kind == "complex":
        return complex_algebra(field)
    if kind == "quaternion":
        return quaternion(field)
    if kind == "octonion":
        return octonion(field)
    if kind == "file":
        return load_structure_file(arg, field)
    if kind == "magma":
        return load_magma_file(arg, field)
    raise UnknownAlgebra(f"unknown algebra {name!r}")
