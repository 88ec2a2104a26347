"""Finite fields, truncated Witt vectors and their Galois-ring model."""
from .field import FieldElement, FiniteField, field_ops, is_irreducible
from .galois import GaloisRing
from .polys import WittPolynomialTable, gen_witt_polys
from .witt import (WittRing, WittScalar, padic_inverse, padic_oracle, teichmuller, witt_add,
                   witt_inv, witt_mul)

__all__ = ["FieldElement", "FiniteField", "field_ops", "is_irreducible", "GaloisRing",
           "WittPolynomialTable", "gen_witt_polys", "WittRing", "WittScalar", "padic_inverse",
           "padic_oracle", "teichmuller", "witt_add", "witt_inv", "witt_mul"]
