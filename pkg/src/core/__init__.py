"""
Core package: alpha-distances, objective evaluation and brute-force oracles.
"""

from .brute_force import all_optimal_sets, brute_force_opt, brute_force_variant_opt
from .models import BudgetExceededError, CoreError, Solution, VariantKind, VariantTag
from .objective import (
    DISTANCE_TOL,
    alpha_closest_set,
    alpha_distance,
    alpha_distances,
    check_subset_budget,
    enumerate_alpha_distances,
    evaluate,
    objective,
    subset_array,
)
from .variants import variant_value

__all__ = [
    "BudgetExceededError",
    "CoreError",
    "DISTANCE_TOL",
    "Solution",
    "VariantKind",
    "VariantTag",
    "all_optimal_sets",
    "alpha_closest_set",
    "alpha_distance",
    "alpha_distances",
    "brute_force_opt",
    "brute_force_variant_opt",
    "check_subset_budget",
    "enumerate_alpha_distances",
    "evaluate",
    "objective",
    "subset_array",
    "variant_value",
]
