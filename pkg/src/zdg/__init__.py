"""Generalized zero-divisor graphs of maps into finite commutative semigroups."""

__version__ = "0.1.0"

from .construct import LabeledFunction, build_classic, build_graph, check_closure  # noqa: E402
from .graph import INF, UNDEFINED, SimpleGraph, diameter  # noqa: E402
from .semigroup import SemigroupTable, validate, zn_multiplicative  # noqa: E402
from .verdict import Status, VerdictReport  # noqa: E402

__all__ = [
    "LabeledFunction", "build_classic", "build_graph", "check_closure", "INF", "UNDEFINED",
    "SimpleGraph", "diameter", "SemigroupTable", "validate", "zn_multiplicative",
    "Status", "VerdictReport", "__version__",
]
