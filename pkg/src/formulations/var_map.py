"""
Column layouts for the relaxations.

F1:  x_ij at i*m + j, then y_j, then z
F2:  x^b_ij at b*n*m + i*m + j (b = 0..alpha-1), then y_j, then z
F3:  x_iA at i*C + a (a = position of A in the catalog), then y_j, then z
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from ..instance.models import Instance


class FormulationError(Exception):
    """Base exception for relaxation builders."""


class FormulationKind(str, Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F3V = "F3-V"


@dataclass(frozen=True)
class VarMap:
    """
    Bijection between model variables and LP columns.

    ``subset_catalog`` is only populated for the F3 family and lists the
    alpha-subsets of facilities in lexicographic order.
    """

    kind: FormulationKind
    n: int
    m: int
    alpha: int
    subset_catalog: Tuple[Tuple[int, ...], ...] = ()
    _subset_pos: Dict[Tuple[int, ...], int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind in (FormulationKind.F3, FormulationKind.F3V):
            if not self.subset_catalog:
                raise FormulationError("F3-family layouts need a subset catalog")
            self._subset_pos.update({A: a for a, A in enumerate(self.subset_catalog)})

    @property
    def is_subset_layout(self) -> bool:
        return self.kind in (FormulationKind.F3, FormulationKind.F3V)

    @property
    def x_block(self) -> int:
        """Number of x columns per customer (per layer for F2)."""
        return len(self.subset_catalog) if self.is_subset_layout else self.m

    @property
    def num_x(self) -> int:
        layers = self.alpha if self.kind is FormulationKind.F2 else 1
        return layers * self.n * self.x_block

    @property
    def num_vars(self) -> int:
        return self.num_x + self.m + 1

    @property
    def z_index(self) -> int:
        return self.num_x + self.m

    def y_index(self, j: int) -> int:
        if not 0 <= j < self.m:
            raise FormulationError(f"facility {j} out of range")
        return self.num_x + j

    def x_index(self, i: int, key: int, layer: int = 0) -> int:
        """
        Column of x_ij (F1), x^layer_ij (F2) or x_iA with A = catalog[key] (F3).
        """
        if not 0 <= i < self.n:
            raise FormulationError(f"customer {i} out of range")
        if not 0 <= key < self.x_block:
            raise FormulationError(f"x key {key} out of range")
        if self.kind is FormulationKind.F2:
            if not 0 <= layer < self.alpha:
                raise FormulationError(f"layer {layer} out of range")
            return layer * self.n * self.m + i * self.m + key
        return i * self.x_block + key

    def subset_id(self, subset: Tuple[int, ...]) -> int:
        try:
            return self._subset_pos[tuple(sorted(subset))]
        except KeyError:
            raise FormulationError(f"{subset} is not an alpha-subset of the catalog") from None

    def var_names(self) -> Tuple[str, ...]:
        """Column labels with 1-based ids, for LP text export."""
        names = []
        if self.kind is FormulationKind.F2:
            for b in range(self.alpha):
                names.extend(f"x{b + 1}_{i + 1}_{j + 1}" for i in range(self.n) for j in range(self.m))
        elif self.is_subset_layout:
            for i in range(self.n):
                for A in self.subset_catalog:
                    names.append(f"x_{i + 1}_" + "_".join(str(j + 1) for j in A))
        else:
            names.extend(f"x_{i + 1}_{j + 1}" for i in range(self.n) for j in range(self.m))
        names.extend(f"y_{j + 1}" for j in range(self.m))
        names.append("z")
        return tuple(names)


def check_problem_args(inst: Instance, p: int, alpha: int) -> None:
    """Raise FormulationError unless 1 <= alpha <= p < m."""
    if alpha < 1:
        raise FormulationError("alpha must be >= 1")
    if p < alpha:
        raise FormulationError(f"p={p} must be >= alpha={alpha}")
    if p >= inst.m:
        raise FormulationError(f"p={p} must be < m={inst.m}")


def default_include_all_linking(inst: Instance, include_all_linking: Optional[bool]) -> bool:
    """All x <= y rows up front on small instances, separation mode otherwise."""
    if include_all_linking is not None:
        return include_all_linking
    return inst.n * inst.m <= 40_000
