"""Commutative post-Lie algebra structures on nilpotent Lie algebras.

Exact rational linear algebra, free-nilpotent Lie algebras on Lyndon bases,
CPA axiom checks, a Groebner-basis solver for all CPA structures on a given
algebra, and the linear systems behind property F.
"""

from .catalog import catalog, resolve
from .cpa import CpaProduct, is_central, is_complete, verify
from .eqn import conjecture_scan, has_property_f, center_ratio_bound, solve_grid, solve_pair
from .exact import Matrix, Subspace, nullspace, rank, rref
from .freelie import build_free_nilpotent, witt_dimension
from .liealg import LieAlgebraTable, series, table_from_rules, validate
from .polysolve import solve_cpa, variety_is_central

__version__ = "0.1.0"

__all__ = [
    "CpaProduct",
    "LieAlgebraTable",
    "Matrix",
    "Subspace",
    "build_free_nilpotent",
    "catalog",
    "conjecture_scan",
    "has_property_f",
    "is_central",
    "is_complete",
    "center_ratio_bound",
    "nullspace",
    "rank",
    "resolve",
    "rref",
    "series",
    "solve_cpa",
    "solve_grid",
    "solve_pair",
    "table_from_rules",
    "validate",
    "variety_is_central",
    "verify",
    "witt_dimension",
]
