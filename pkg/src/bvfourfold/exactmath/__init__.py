"""Exact arithmetic on homogeneous forms over Q."""

from .binary import (
    BINARY_ONE,
    BINARY_S,
    BINARY_T,
    BinaryForm,
    ProjPoint1,
    add,
    discriminant,
    divides,
    evaluate,
    exact_div,
    gcd,
    mul,
    reassemble,
    squarefree_stratify,
    vanishing_order,
)
from .linalg import det, nullspace, rank
from .multi import BiForm, Form, TernaryForm, monomials, ternary_from_monomials
from .rational import parse_rational, rational_str

__all__ = [
    "det",
    "nullspace",
    "rank",
    "BINARY_ONE",
    "BINARY_S",
    "BINARY_T",
    "BiForm",
    "BinaryForm",
    "Form",
    "ProjPoint1",
    "TernaryForm",
    "add",
    "discriminant",
    "divides",
    "evaluate",
    "exact_div",
    "gcd",
    "monomials",
    "mul",
    "parse_rational",
    "rational_str",
    "reassemble",
    "squarefree_stratify",
    "ternary_from_monomials",
    "vanishing_order",
]
