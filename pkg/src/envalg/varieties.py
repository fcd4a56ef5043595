"""Built-in varieties as lists of defining equations."""

from __future__ import annotations

from pathlib import Path

from .errors import UnknownVariety
from .magma import MagmaPolynomial, parse_equation
from .scalars import Q, FieldSpec

VARIETIES: dict[str, tuple[str, ...]] = {
    "mag": (),
    "triv": ("x*y",),
    "ass": ("(x*y)*z - x*(y*z)",),
    "com": ("x*y - y*x",),
    "comass": ("x*y - y*x", "(x*y)*z - x*(y*z)"),
    "lie": ("x*x", "(x*y)*z + (y*z)*x + (z*x)*y"),
    "leib": ("(x*y)*z - x*(y*z) - (x*z)*y",),
    "lev": ("x*y - y*x", "(w*x)*(y*z) - (w*y)*(x*z)"),
    "alt": ("(x*x)*y - x*(x*y)", "(x*y)*y - x*(y*y)"),
    "leftalt": ("(x*x)*y - x*(x*y)",),
    "rightalt": ("(x*y)*y - x*(y*y)",),
    "cube": ("(x*x)*x",),
}


def variety(name: str, field: FieldSpec = Q) -> list[MagmaPolynomial]:
    """Equations of a built-in variety, or of a file with one equation per line."""
    if name.startswith("file:"):
        return load_equations(name[5:], field)
    try:
        texts = VARIETIES[name]
    except KeyError:
        raise UnknownVariety(f"unknown variety {name!r}; known: {', '.join(VARIETIES)}") from None
    return [parse_equation(t, field)[1] for t in texts]


def load_equations(path: str, field: FieldSpec = Q) -> list[MagmaPolynomial]:
    """One equation per line; blank lines and ``#`` comments ignored."""
    eqs = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            eqs.append(parse_equation(line, field)[1])
    return eqs
