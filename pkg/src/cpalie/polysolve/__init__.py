"""Polynomial systems: Groebner bases, radical membership and the CPA solver."""

from .groebner import Budget, GroebnerBasis, PolyIdeal, Verdict, buchberger, radical_member, reduce
from .poly import MultiPoly
from .solve import (
    CentralityResult,
    SolutionVariety,
    assemble_constraints,
    find_point,
    solve_cpa,
    variety_is_central,
)

__all__ = [
    "Budget",
    "CentralityResult",
    "GroebnerBasis",
    "MultiPoly",
    "PolyIdeal",
    "SolutionVariety",
    "Verdict",
    "assemble_constraints",
    "buchberger",
    "find_point",
    "radical_member",
    "reduce",
    "solve_cpa",
    "variety_is_central",
]
