"""Exact field arithmetic over the rationals and prime fields.

A :class:`FieldSpec` is chosen once per computation.  Polynomial code stores
*raw* field values (``gmpy2.mpq`` for Q, plain ``int`` residues for F_p) and
routes arithmetic through the field; :class:`Scalar` is the checked wrapper
for callers who want mixed-field mistakes caught.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``characteristic == 0``, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"Q"`` or ``"Fp:<prime>"``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls(0)
        if t.lower().startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad field spec {text!r}") from None
            return cls(p)
        raise ValueError(f"bad field spec {text!r}; expected 'Q' or 'Fp:<prime>'")

    @property
    def kind(self) -> str:
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    # -- raw values -----------------------------------------------------

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        """Map an int, Fraction, mpq or ``"a/b"`` string into the field."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if p == 0:
            if isinstance(value, Fraction):
                return mpq(value.numerator, value.denominator)
            return mpq(value)
        if isinstance(value, (Fraction, type(mpq(0)))):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise DivisionByZero(f"denominator {den} vanishes in F_{p}")
            return num * pow(den, -1, p) % p
        return int(value) % p

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def eq(self, a, b) -> bool:
        return self.sub(a, b) == 0

    def elements(self):
        """All elements of a prime field (raises for Q)."""
        if not self.characteristic:
            raise ValueError("Q is infinite")
        return range(self.characteristic)

    def format(self, a) -> str:
        return str(a)


Q = FieldSpec(0)


@dataclass(frozen=True)
class Scalar:
    """An immutable field element tagged with its field."""

    value: object
    field: FieldSpec = Q

    def __post_init__(self):
        object.__setattr__(self, "value", self.field(self.value))

    def _check(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            return Scalar(other, self.field)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other):
        other = self._check(other)
        return Scalar(self.field.div(self.value, other.value), self.field)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field.neg(self.value), self.field)

    def inv(self) -> "Scalar":
        return Scalar(self.field.inv(self.value), self.field)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return self.value == other.value
        return self.value == self.field(other)

    def __hash__(self):
        return hash((self.value, self.field))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.value}, {self.field})"


def field_arithmetic(a: Scalar, b: Scalar | None, op: str):
    """Apply ``op`` in {add, sub, mul, div, neg, inv, eq} to scalars."""
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")
