"""Split extensions E = A (+) U where U = U_V(A) acts on itself from the right.

Elements are pairs (a, alpha) with a in A and alpha a reduced polynomial,
multiplied by

    (a, alpha)(b, beta) = (ab, alpha r_b + beta l_a)

where r_b and l_a are expanded linearly over the coordinates of b and a.
For abelian A the first component of every product is 0, and the module
part of a product of two products always vanishes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .algebra import AlgebraElement, StructureAlgebra, abelian
from .errors import NotCertified, StateMismatch
from .freealg import L, R, FreePoly
from .groebner import GroebnerState


@dataclass(frozen=True, eq=False)
class ExtensionElement:
    base: AlgebraElement
    module: FreePoly
    state: GroebnerState
    reduced: bool = dc_field(default=False, compare=False, repr=False)

    def __post_init__(self):
        # keep the module part reduced
        if not self.reduced:
            object.__setattr__(self, "module", self.state.reduce(self.module))
            object.__setattr__(self, "reduced", True)

    def _check(self, other: "ExtensionElement"):
        if other.state is not self.state:
            raise StateMismatch("elements use different Groebner states")
        if other.base.algebra != self.base.algebra:
            raise StateMismatch("elements extend different algebras")

    def __add__(self, other):
        self._check(other)
        return ExtensionElement(self.base + other.base, self.module + other.module, self.state)

    def __sub__(self, other):
        self._check(other)
        return ExtensionElement(self.base - other.base, self.module - other.module, self.state)

    def scale(self, c):
        return ExtensionElement(self.base.scale(c), self.module.scale(c), self.state)

    def __mul__(self, other):
        return ext_multiply(self, other)

    def is_zero(self) -> bool:
        return self.base.is_zero() and self.module.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExtensionElement):
            return NotImplemented
        return self.state is other.state and self.base == other.base and self.module == other.module

    def __hash__(self):
        return hash((self.base, self.module))

    def __str__(self):
        return f"({self.base}, {self.module.format(self.state.order)})"

    __repr__ = __str__


def make_element(algebra: StructureAlgebra, state: GroebnerState, base=None, module=None) -> ExtensionElement:
    """Build (base, module); ``module`` may be a FreePoly or text like ``"r1.r2 - l3"``."""
    from .freealg import parse_poly

    F = algebra.field
    b = algebra.zero() if base is None else (base if isinstance(base, AlgebraElement) else algebra.element(base))
    if module is None:
        m = FreePoly.zero(F)
    elif isinstance(module, str):
        m = parse_poly(module, state.order, F)
    else:
        m = module
    return ExtensionElement(b, m, state)


def _letters(state: GroebnerState, side: str, a: AlgebraElement) -> FreePoly:
    order = state.order
    return FreePoly({order.letter(side, k + 1): c for k, c in enumerate(a.coords) if c},
                    state.field, raw=True)


def ext_multiply(u: ExtensionElement, v: ExtensionElement) -> ExtensionElement:
    u._check(v)
    st = u.state
    module = u.module * _letters(st, R, v.base) + v.module * _letters(st, L, u.base)
    if module and not st.is_certified(module.weight):
        raise NotCertified(f"product reaches weight {module.weight}, certified below {st.complete_below}")
    return ExtensionElement(u.base * v.base, st.reduce(module), st, reduced=True)


def dorofeev_witness(n: int, state: GroebnerState, algebra: StructureAlgebra | None = None) -> ExtensionElement:
    """The left-bracketed product (((0,r1)(e2,0))(e3,0))...(en,0).

    Its module part is the normal form of r1 r2 ... rn, which is nonzero.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if state.order.n < n:
        raise StateMismatch(f"state has rank {state.order.n}, need at least {n}")
    if not state.is_certified(n):
        raise NotCertified(f"state is not certified through weight {n}")
    A = algebra or abelian(state.order.n, state.field)
    order = state.order
    x = make_element(A, state, module=FreePoly.word(order.r(1), state.field))
    for i in range(2, n + 1):
        x = x * make_element(A, state, base=A.e(i - 1))
    expected = state.reduce(FreePoly.word("".join(order.r(i) for i in range(1, n + 1)), state.field))
    assert x.base.is_zero() and x.module == expected and not x.module.is_zero(), \
        f"witness check failed: {x}"
    return x


@dataclass
class SolvabilityReport:
    trials: int
    seed: int
    failures: int = 0
    first_failure: str | None = None
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def __str__(self):
        head = "PASS" if self.passed else "FAIL"
        s = f"{head}  (uv)(xy) = 0 on {self.trials} random quadruples (seed {self.seed})"
        if not self.passed:
            s += f"; {self.failures} failures, first: {self.first_failure}"
        return s

    def to_json(self) -> dict:
        return {"trials": self.trials, "seed": self.seed, "failures": self.failures,
                "passed": self.passed, "first_failure": self.first_failure}


def random_element(algebra: StructureAlgebra, state: GroebnerState, rng: random.Random,
                   words: list[str]) -> ExtensionElement:
    F = algebra.field
    pool = [F(c) for c in (F.elements() if F.characteristic else range(-3, 4))]
    base = AlgebraElement(algebra, [rng.choice(pool) for _ in range(algebra.rank)])
    terms = {w: rng.choice(pool) for w in words}
    module = FreePoly({w: c for w, c in terms.items() if c}, F, raw=True)
    return ExtensionElement(base, module, state, reduced=True)


def _module_words(state: GroebnerState, max_weight: int | None) -> list[str]:
    if max_weight is None:
        if state.zero_level is not None:
            max_weight = state.zero_level - 1
        elif state.complete_below is not None:
            max_weight = state.complete_below - 1
        else:
            max_weight = state.truncation_weight or 0
    words = []
    for w in range(max_weight + 1):
        words.extend(state.normal_monomials(w))
    return words


def solvability_check(state: GroebnerState, trials: int = 100, seed: int = 0,
                      algebra: StructureAlgebra | None = None, max_weight: int | None = None) -> SolvabilityReport:
    """Test (uv)(xy) = 0 on random quadruples of E."""
    A = algebra or abelian(state.order.n, state.field)
    rng = random.Random(seed)
    words = _module_words(state, max_weight)
    report = SolvabilityReport(trials, seed)
    for _ in range(trials):
        u, v, x, y = (random_element(A, state, rng, words) for _ in range(4))
        z = (u * v) * (x * y)
        if z:
            report.failures += 1
            if report.first_failure is None:
                report.first_failure = f"u={u} v={v} x={x} y={y} -> {z}"
    return report


def extension_algebra(state: GroebnerState, algebra: StructureAlgebra | None = None,
                      max_weight: int | None = None) -> StructureAlgebra:
    """E as a :class:`StructureAlgebra` with basis e_i followed by normal words.

    Requires a finite-dimensional state unless ``max_weight`` truncates the
    module; a truncated module is only closed under the product when the
    truncation is at a zero level.
    """
    A = algebra or abelian(state.order.n, state.field)
    F = state.field
    words = _module_words(state, max_weight)
    index = {w: A.rank + k for k, w in enumerate(words)}
    names = list(A.basis) + [f"[{state.order.format_word(w)}]" for w in words]
    N = len(names)
    zero = (F.zero,) * N
    table = [[list(zero) for _ in range(N)] for _ in range(N)]

    def put(i, j, poly: FreePoly, base: dict | None = None):
        row = table[i][j]
        for k, c in (base or {}).items():
            row[k] = c
        for w, c in poly.terms.items():
            if w not in index:
                raise NotCertified(f"product leaves the truncated module at word {state.order.format_word(w)}")
            row[index[w]] = c

    for i in range(A.rank):
        ei = A.e(i)
        for j in range(A.rank):
            put(i, j, FreePoly.zero(F), A.mul_sparse({i: F.one}, {j: F.one}))
        li = _letters(state, L, ei)
        ri = _letters(state, R, ei)
        for w, k in index.items():
            m = FreePoly.word(w, F)
            put(i, k, state.reduce(m * li))   # (e_i, 0)(0, w) = (0, w l_i)
            put(k, i, state.reduce(m * ri))   # (0, w)(e_i, 0) = (0, w r_i)
    return StructureAlgebra(F, names, table, name=f"extension of {A.name}")
