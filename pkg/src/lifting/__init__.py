"""
Lifting package: lifted lower bounds, set cover characterisation and lifted
row separation.
"""

from .bounds import (
    FIXPOINT_TOL,
    compute_lb_sharp,
    fasc_value,
    lifted_lp_value,
    next_alpha_distance,
    run_lb_fixpoint,
)
from .lf1 import compute_lb_sharp_1, lf1_value, run_lb1_fixpoint
from .models import BoundResult, LiftedCoefficients, LiftingError, LiftVariant
from .separation import complete_coefficients, separate_lifted

__all__ = [
    "BoundResult",
    "FIXPOINT_TOL",
    "LiftVariant",
    "LiftedCoefficients",
    "LiftingError",
    "complete_coefficients",
    "compute_lb_sharp",
    "compute_lb_sharp_1",
    "fasc_value",
    "lf1_value",
    "lifted_lp_value",
    "next_alpha_distance",
    "run_lb1_fixpoint",
    "run_lb_fixpoint",
    "separate_lifted",
]
