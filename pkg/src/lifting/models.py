"""
Lifting data types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple


class LiftingError(Exception):
    """Base exception for lifted-bound computations."""


class LiftVariant(str, Enum):
    L3 = "L3"      # lifted subset formulation
    L3V = "L3V"    # lifted subset formulation with aggregated linking rows
    L1 = "L1"      # lifted assignment formulation, separated


@dataclass(frozen=True)
class LiftedCoefficients:
    """
    Coefficients w of a lifted row sum_j w_j x_ij <= z for one customer.

    Attributes:
        customer: Customer index i
        w: Facility -> coefficient (facilities absent from the map have w = 0)
        lb_used: Lower bound the coefficients were lifted with
        ub_used: Upper bound restricting the subsets considered (inf for none)
        value: sum_j w_j x*_ij at the separated point
    """

    customer: int
    w: Dict[int, float]
    lb_used: float
    ub_used: float
    value: float = 0.0

    def lhs(self, x_row) -> float:
        return float(sum(c * x_row[j] for j, c in self.w.items()))


@dataclass(frozen=True)
class BoundResult:
    """Outcome of a lower-bound fixpoint iteration."""

    value: float
    iterations: int
    variant: LiftVariant
    history: Tuple[Tuple[float, float], ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "bound": self.value,
            "iterations": self.iterations,
            "method": self.variant.value,
            "history": [{"lb": lb, "lifted": val} for lb, val in self.history],
        }
