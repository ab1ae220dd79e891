"""Computations with quotients of the dual Steenrod algebra over F2.

Polynomial arithmetic, conjugate classes and Q1, Groebner bases, finite
quotient rings and their numerology, and a page engine for the relative
Adams spectral sequence.
"""

from .milnor import Full, Trunc, q1, verify_milnor_identity, zeta
from .polycore import Poly, Variable, VariableTable, parse_poly, xi_table
from .quotient import build_quotient, frobenius_check, regularity_check, split_dims

__version__ = "0.1.0"

__all__ = [
    "Full",
    "Poly",
    "Trunc",
    "Variable",
    "VariableTable",
    "build_quotient",
    "frobenius_check",
    "parse_poly",
    "q1",
    "regularity_check",
    "split_dims",
    "verify_milnor_identity",
    "xi_table",
    "zeta",
]
