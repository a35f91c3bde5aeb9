"""
Formulations package: LP relaxations (F1-R), (F2-R), (F3-R), (F3-V-R).
"""

from .f1 import build_f1_relaxation, distance_row, f1_var_map, linking_row
from .f2 import build_f2_relaxation
from .f3 import build_f3_relaxation, f3_var_map, subset_distances
from .var_map import (
    FormulationError,
    FormulationKind,
    VarMap,
    check_problem_args,
    default_include_all_linking,
)

__all__ = [
    "FormulationError",
    "FormulationKind",
    "VarMap",
    "build_f1_relaxation",
    "build_f2_relaxation",
    "build_f3_relaxation",
    "check_problem_args",
    "default_include_all_linking",
    "distance_row",
    "f1_var_map",
    "f3_var_map",
    "linking_row",
    "subset_distances",
]
