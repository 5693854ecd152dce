"""Exact scalar arithmetic: Q(i), one optional algebraic extension,
dense univariate polynomials, and branch (dynamic-evaluation) arithmetic
at polynomial roots.  No floating point anywhere."""

from .branch import Branch, branch_invert, poly_eval_at_branch
from .gaussian import GaussianRational
from .literals import (
    ParseError,
    format_gaussian,
    format_poly,
    format_scalar,
    parse_poly,
    parse_scalar,
)
from .poly import Poly
from .tower import BASE, FieldTower, Scalar

__all__ = [
    "BASE",
    "Branch",
    "FieldTower",
    "GaussianRational",
    "ParseError",
    "Poly",
    "Scalar",
    "branch_invert",
    "format_gaussian",
    "format_poly",
    "format_scalar",
    "parse_poly",
    "parse_scalar",
    "poly_eval_at_branch",
]
