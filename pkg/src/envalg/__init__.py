"""Universal enveloping algebras of varieties of algebras, computed with
noncommutative Groebner bases."""

from .algebra import StructureAlgebra, abelian, builtin, check_identity, complex_algebra, octonion, quaternion
from .derive import partial
from .errors import EnvalgError, NotCertified
from .extension import dorofeev_witness, ext_multiply, extension_algebra, solvability_check
from .freealg import FreePoly, MonomialOrder
from .groebner import GroebnerState, PoincareSeries, complete
from .magma import MagmaPolynomial, parse_equation
from .relations import RelationSet, generate_relations
from .scalars import Q, FieldSpec
from .varieties import variety

__version__ = "0.1.0"

__all__ = [
    "StructureAlgebra", "abelian", "builtin", "check_identity", "complex_algebra", "octonion", "quaternion",
    "partial", "EnvalgError", "NotCertified", "dorofeev_witness", "ext_multiply", "extension_algebra",
    "solvability_check", "FreePoly", "MonomialOrder", "GroebnerState", "PoincareSeries", "complete",
    "MagmaPolynomial", "parse_equation", "RelationSet", "generate_relations", "Q", "FieldSpec", "variety",
]
