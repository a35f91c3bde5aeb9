"""
Core data types: solutions and p-center variant descriptors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Iterable, Tuple


class CoreError(Exception):
    """Base exception for objective / oracle errors."""


class BudgetExceededError(CoreError):
    """Raised when an enumeration would exceed its configured budget."""


@dataclass(frozen=True)
class Solution:
    """
    A set of open facilities with its cached objective value.

    Attributes:
        open: 0-based facility indices P
        value: f_alpha(P), recomputed from scratch when the solution was built
    """

    open: FrozenSet[int]
    value: float

    def __post_init__(self) -> None:
        if not self.open:
            raise CoreError("a solution needs at least one open facility")
        if any(j < 0 for j in self.open):
            raise CoreError("facility indices must be non-negative")

    @property
    def size(self) -> int:
        return len(self.open)

    def sorted_open(self) -> Tuple[int, ...]:
        return tuple(sorted(self.open))

    def sort_key(self) -> Tuple[float, Tuple[int, ...]]:
        """Deterministic order: value first, then lexicographic facility set."""
        return (self.value, self.sorted_open())

    def to_dict(self) -> dict:
        """Serialise with 1-based facility ids, as they appear in input files."""
        return {
            "open": [j + 1 for j in self.sorted_open()],
            "value": self.value,
        }


def as_facility_tuple(facilities: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(int(j) for j in facilities)))


class VariantTag(str, Enum):
    """p-center family members whose optimal values are ordered against each other."""
    PCP = "PCP"          # p-center
    ANPCP = "ANPCP"      # alpha-neighbor p-center
    PNCP = "PNCP"        # p-next center
    PACCP = "PACCP"      # p-alpha-closest center


@dataclass(frozen=True)
class VariantKind:
    tag: VariantTag
    alpha: int = 1

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise CoreError("alpha must be >= 1")

    @property
    def requires_same_locations(self) -> bool:
        return self.tag in (VariantTag.ANPCP, VariantTag.PNCP)

    def __str__(self) -> str:
        if self.tag in (VariantTag.ANPCP, VariantTag.PACCP):
            return f"{self.tag.value}[alpha={self.alpha}]"
        return self.tag.value
