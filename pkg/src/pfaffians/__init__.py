"""Exact commutative algebra for Pfaffian resolutions.

Construction, certification, and inversion of length-3 Pfaffian resolutions
of codimension-3 subcanonical subschemes of projective space, over QQ or
GF(p), with no floating point anywhere.
"""

from .rings import (
    GF,
    ParseError,
    Polynomial,
    PolynomialRing,
    QQ,
    TermOrder,
    field_of_characteristic,
    polynomial_ring,
)
from .groebner import (
    ColumnSpan,
    GroebnerBasis,
    codimension,
    dimension,
    groebner_basis,
    minimal_generators,
    monomial_quotient_hf,
    vector_degree,
    vector_is_homogeneous,
)

__all__ = [
    "GF",
    "ParseError",
    "Polynomial",
    "PolynomialRing",
    "QQ",
    "TermOrder",
    "field_of_characteristic",
    "polynomial_ring",
    "ColumnSpan",
    "GroebnerBasis",
    "codimension",
    "dimension",
    "groebner_basis",
    "minimal_generators",
    "monomial_quotient_hf",
    "vector_degree",
    "vector_is_homogeneous",
]

__version__ = "0.1.0"
