"""
Instance data models.

GraphSpec and CoordSpec hold raw benchmark input exactly as read from disk
(1-based vertex ids). Instance is the solver-facing object: a dense distance
matrix indexed by 0-based customer and facility positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np


class InstanceError(Exception):
    """Base exception for instance construction errors."""


class InstanceParseError(InstanceError):
    """Raised when an instance file is malformed."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceFormat(str, Enum):
    """Supported instance file formats."""
    PMED = "pmed"        # OR-Library p-median graph
    TSPLIB = "tsplib"    # TSPLIB coordinates (EUC_2D / ATT)
    MATRIX = "matrix"    # YAML explicit distance matrix


class EdgeWeightType(str, Enum):
    EUC_2D = "EUC_2D"
    ATT = "ATT"


Edge = Tuple[int, int, int]


@dataclass(frozen=True)
class GraphSpec:
    """
    Raw OR-Library p-median graph.

    Attributes:
        n: Vertex count
        edges: (u, v, w) triples with 1-based vertex ids and integer weight
        p: Facility count from the file header
    """

    n: int
    edges: Tuple[Edge, ...]
    p: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InstanceError("vertex count must be >= 1")
        for u, v, w in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InstanceError(f"vertex id out of range: ({u}, {v})")
            if w < 0:
                raise InstanceError(f"negative weight on edge ({u}, {v})")


@dataclass(frozen=True)
class CoordSpec:
    """
    Raw TSPLIB coordinate instance.

    Attributes:
        name: NAME entry of the file
        dimension: Declared point count
        coords: (x, y) pairs in file order
        edge_weight_type: EUC_2D or ATT (both evaluated as exact Euclidean)
    """

    name: str
    dimension: int
    coords: Tuple[Tuple[float, float], ...]
    edge_weight_type: EdgeWeightType = EdgeWeightType.EUC_2D

    def __post_init__(self) -> None:
        if len(self.coords) != self.dimension:
            raise InstanceError(
                f"point count mismatch: DIMENSION={self.dimension}, found {len(self.coords)}"
            )


@dataclass(frozen=True, eq=False)
class Instance:
    """
    Immutable pαCCP instance.

    Rows of ``d`` are customers I, columns are facilities J. When
    ``same_locations`` is set, I = J and position k denotes the same node in
    both roles.

    Attributes:
        name: Instance name used in reports
        d: Dense (n x m) float64 distance matrix, read-only
        same_locations: True when customers and facilities coincide
        integral: True when every distance is an integer value
    """

    name: str
    d: np.ndarray
    same_locations: bool = True
    integral: bool = field(init=False)

    def __post_init__(self) -> None:
        d = np.array(self.d, dtype=np.float64, copy=True)
        if d.ndim != 2 or d.size == 0:
            raise InstanceError("distance matrix must be a non-empty 2-D array")
        if not np.all(np.isfinite(d)):
            raise InstanceError("distance matrix contains non-finite entries")
        if np.any(d < 0):
            raise InstanceError("distances must be non-negative")
        if self.same_locations:
            if d.shape[0] != d.shape[1]:
                raise InstanceError("same_locations requires a square distance matrix")
            if np.any(np.diag(d) != 0.0):
                raise InstanceError("same_locations requires a zero diagonal")
        d.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "integral", bool(np.all(d == np.round(d))))

    @property
    def n(self) -> int:
        """Customer count |I|."""
        return int(self.d.shape[0])

    @property
    def m(self) -> int:
        """Facility count |J|."""
        return int(self.d.shape[1])

    def is_symmetric(self, tol: float = 1e-9) -> bool:
        return self.same_locations and bool(np.allclose(self.d, self.d.T, rtol=0.0, atol=tol))

    def satisfies_triangle_inequality(self, tol: float = 1e-9) -> bool:
        """Check d_ik <= d_ij + d_jk for all i, j, k (square instances only)."""
        if not self.same_locations:
            return False
        d = self.d
        # min over j of d_ij + d_jk, vectorised one intermediate node at a time
        for j in range(self.n):
            if np.any(d > d[:, j, None] + d[None, j, :] + tol):
                return False
        return True

    def __repr__(self) -> str:
        return f"<Instance(name={self.name!r}, n={self.n}, m={self.m}, same_locations={self.same_locations})>"
