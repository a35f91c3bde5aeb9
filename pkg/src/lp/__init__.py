"""
LP package: row-form model, bounded-variable simplex, LP text export.
"""

from .model import (
    Basis,
    LpError,
    LpModel,
    LpRow,
    LpSolution,
    LpStatus,
    Relation,
    add_rows,
    to_lp_text,
)
from .simplex import (
    FEASIBILITY_TOL,
    OPTIMALITY_TOL,
    PIVOT_TOL,
    SimplexOptions,
    lp_solve,
)

__all__ = [
    "Basis",
    "FEASIBILITY_TOL",
    "LpError",
    "LpModel",
    "LpRow",
    "LpSolution",
    "LpStatus",
    "OPTIMALITY_TOL",
    "PIVOT_TOL",
    "Relation",
    "SimplexOptions",
    "add_rows",
    "lp_solve",
    "to_lp_text",
]
