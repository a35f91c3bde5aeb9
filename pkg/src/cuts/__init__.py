"""
Cuts package: fixings, linking, upper-bound, lifted and closest-assignment rows.
"""

from .closest_assignment import closest_assignment_rows
from .fixings import fixing_rows, min_subset_through, remoteness_fixings, upper_bound_fixings
from .lifted import lifted_cut
from .linking import (
    distance_order,
    linking_cut,
    linking_rows_initial,
    separate_linking,
    violated_linking_for,
)
from .models import VIOLATION_TOL, CutError, CutFamily, CutRow, exceed_threshold
from .upper_bound import general_ub_rows, simple_ub_rows

__all__ = [
    "CutError",
    "CutFamily",
    "CutRow",
    "VIOLATION_TOL",
    "closest_assignment_rows",
    "distance_order",
    "exceed_threshold",
    "fixing_rows",
    "general_ub_rows",
    "lifted_cut",
    "linking_cut",
    "linking_rows_initial",
    "min_subset_through",
    "remoteness_fixings",
    "separate_linking",
    "simple_ub_rows",
    "upper_bound_fixings",
    "violated_linking_for",
]
