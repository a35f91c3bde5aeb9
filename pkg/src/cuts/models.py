"""
Cut rows shared by every generator and separator.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from ..lp.model import LpRow, Relation

# Violations at or below this are treated as satisfied.
VIOLATION_TOL = 1e-6


def exceed_threshold(UB: float) -> float:
    """Values above this are strictly worse than UB, allowing for summation error."""
    return UB + 1e-9 * (1.0 + abs(UB))


class CutError(Exception):
    """Base exception for cut generation errors."""


class CutFamily(str, Enum):
    FIXING = "Fixing"
    LINKING = "Linking"
    SIMPLE_UB = "SimpleUB"
    GENERAL_UB = "GeneralUB"
    LIFTED = "Lifted"
    CLOSEST_ASSIGN = "ClosestAssign"


@dataclass(frozen=True)
class CutRow:
    """
    One inequality over the columns of a VarMap.

    Attributes:
        family: Generator that produced the row
        indices / coefs: Sparse coefficient vector, sorted by column
        relation: Row sense
        rhs: Right-hand side
        origin_customer: Customer the row was separated for, if any
    """

    family: CutFamily
    indices: Tuple[int, ...]
    coefs: Tuple[float, ...]
    relation: Relation
    rhs: float
    origin_customer: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.coefs):
            raise CutError("cut indices and coefficients differ in length")
        if list(self.indices) != sorted(set(self.indices)):
            raise CutError("cut indices must be strictly increasing")

    @classmethod
    def from_dict(
        cls,
        family: CutFamily,
        coefficients: Dict[int, float],
        relation: Relation,
        rhs: float,
        origin_customer: Optional[int] = None,
    ) -> "CutRow":
        items = sorted((int(k), float(v)) for k, v in coefficients.items() if v != 0.0)
        return cls(
            family=family,
            indices=tuple(k for k, _ in items),
            coefs=tuple(v for _, v in items),
            relation=relation,
            rhs=float(rhs),
            origin_customer=origin_customer,
        )

    @property
    def coefficients(self) -> Dict[int, float]:
        return dict(zip(self.indices, self.coefs))

    def to_lp_row(self, name: str = "") -> LpRow:
        label = name
        if not label and self.origin_customer is not None:
            label = f"{self.family.value.lower()}_{self.origin_customer + 1}"
        return LpRow(indices=self.indices, coefs=self.coefs, relation=self.relation, rhs=self.rhs, name=label)

    def activity(self, x: np.ndarray) -> float:
        if not self.indices:
            return 0.0
        return float(np.dot(np.asarray(self.coefs), np.asarray(x)[list(self.indices)]))

    def violation(self, x: np.ndarray) -> float:
        act = self.activity(x)
        if self.relation is Relation.LE:
            return max(0.0, act - self.rhs)
        if self.relation is Relation.GE:
            return max(0.0, self.rhs - act)
        return abs(act - self.rhs)

    def is_violated(self, x: np.ndarray, tol: float = VIOLATION_TOL) -> bool:
        return self.violation(x) > tol
