"""Exact invariants of complex curve germs given by Puiseux data."""

from .carrousel_tree import (
    build_carrousel_tree,
    canonical_code,
    curve_eggers,
    curve_tree,
    eggers_reduce,
    equivalent,
    explain_difference,
    tree_code,
)
from .contact import coincidence_exponent, intersection_multiplicity, q_map, verify_ultrametric
from .parsing import parse_curve, read_curve
from .puiseux import (
    Branch,
    Curve,
    CurveError,
    InvariantError,
    NonReducedError,
    characteristic_exponents,
    essential_exponents,
    make_curve,
    normalize_branch,
    sheets,
)
from .splice import build_splice, curve_splice, linking_number

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "Curve",
    "CurveError",
    "InvariantError",
    "NonReducedError",
    "build_carrousel_tree",
    "build_splice",
    "canonical_code",
    "characteristic_exponents",
    "coincidence_exponent",
    "curve_eggers",
    "curve_splice",
    "curve_tree",
    "eggers_reduce",
    "equivalent",
    "essential_exponents",
    "explain_difference",
    "intersection_multiplicity",
    "linking_number",
    "make_curve",
    "normalize_branch",
    "parse_curve",
    "q_map",
    "read_curve",
    "sheets",
    "tree_code",
    "verify_ultrametric",
]
