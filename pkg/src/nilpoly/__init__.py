"""Exact difference calculus for polynomial maps into unitriangular groups."""

from .errors import (
    InternalError,
    LayoutError,
    MembershipError,
    NilpolyError,
    NotPolynomialError,
    RingError,
)
from .mpoly import Block, MPoly, lagrange_fit, make_layout
from .polymap import (
    PolyMap,
    degree_bounds,
    diff_left,
    diff_right,
    lc_degree_bounds,
    ordered_product,
    pm_commutator,
    pm_conjugate,
    pm_degree,
    pm_inverse,
    pm_lc_degree,
    pm_permute,
    pm_product,
    superadditive_closure,
)
from .scalars import NEG_INF, ModInt
from .unitri import UniTri

__all__ = [
    "NEG_INF", "Block", "InternalError", "LayoutError", "MPoly", "MembershipError", "ModInt",
    "NilpolyError", "NotPolynomialError", "PolyMap", "RingError", "UniTri", "degree_bounds",
    "diff_left", "diff_right", "lagrange_fit", "lc_degree_bounds", "make_layout",
    "ordered_product", "pm_commutator", "pm_conjugate", "pm_degree", "pm_inverse",
    "pm_lc_degree", "pm_permute", "pm_product", "superadditive_closure",
]
