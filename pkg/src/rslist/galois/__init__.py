"""Finite fields, polynomials and symbolic matrices."""

from .fields import (
    FieldElement,
    FieldSpec,
    element_from_json,
    element_to_json,
    field_create,
    field_from_json,
    field_to_json,
    prime_field,
)
from .tower import build_tower, degree_over, tower_extend, verify_monomial_basis
from .unipoly import UniPoly

__all__ = [
    "FieldElement", "FieldSpec", "UniPoly", "build_tower", "degree_over",
    "element_from_json", "element_to_json", "field_create", "field_from_json",
    "field_to_json", "prime_field", "tower_extend", "verify_monomial_basis",
]
