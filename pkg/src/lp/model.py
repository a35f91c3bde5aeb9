"""
Linear-program data model.

An LpModel is a minimisation problem in row form:

    min  c^T x
    s.t. rows r: sum_k a_rk x_k  (<=, =, >=)  b_r
         lo <= x <= hi            (lo may be -inf, hi may be +inf)

Models are immutable; ``add_rows`` / ``with_bounds`` return new models that
share row storage with the original.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse


class LpError(Exception):
    """Base exception for LP model / kernel errors."""


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class LpStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    ITER_LIMIT = "IterLimit"
    TIME_LIMIT = "TimeLimit"


@dataclass(frozen=True)
class LpRow:
    """
    One linear constraint.

    Attributes:
        indices: Column indices of the non-zero coefficients
        coefs: Coefficients aligned with ``indices``
        relation: <=, = or >=
        rhs: Right-hand side
        name: Optional label (used in LP text export)
    """

    indices: Tuple[int, ...]
    coefs: Tuple[float, ...]
    relation: Relation
    rhs: float
    name: str = ""

    def __post_init__(self) -> None:
        if len(self.indices) != len(self.coefs):
            raise LpError("row indices and coefficients differ in length")

    @classmethod
    def from_dict(cls, coefs: Dict[int, float], relation: Relation, rhs: float, name: str = "") -> "LpRow":
        items = sorted((int(k), float(v)) for k, v in coefs.items() if v != 0.0)
        return cls(
            indices=tuple(k for k, _ in items),
            coefs=tuple(v for _, v in items),
            relation=relation,
            rhs=float(rhs),
            name=name,
        )

    def bounds(self) -> Tuple[float, float]:
        """Row activity interval [lo, hi]."""
        if self.relation is Relation.LE:
            return -np.inf, self.rhs
        if self.relation is Relation.GE:
            return self.rhs, np.inf
        return self.rhs, self.rhs

    def activity(self, x: np.ndarray) -> float:
        if not self.indices:
            return 0.0
        return float(np.dot(np.asarray(self.coefs), x[list(self.indices)]))

    def violation(self, x: np.ndarray) -> float:
        """Amount by which x violates the row (0 when satisfied)."""
        act = self.activity(x)
        lo, hi = self.bounds()
        return max(0.0, lo - act, act - hi)


@dataclass(frozen=True, eq=False)
class LpModel:
    """
    Bounded-variable linear program (minimisation).

    Attributes:
        num_vars: Number of structural columns
        objective: Cost vector of length ``num_vars``
        var_lo / var_hi: Column bounds
        rows: Constraints
        var_names: Optional column labels for LP text export
    """

    num_vars: int
    objective: np.ndarray
    var_lo: np.ndarray
    var_hi: np.ndarray
    rows: Tuple[LpRow, ...] = ()
    var_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        for attr in ("objective", "var_lo", "var_hi"):
            arr = np.array(getattr(self, attr), dtype=np.float64, copy=True)
            if arr.shape != (self.num_vars,):
                raise LpError(f"{attr} must have length num_vars={self.num_vars}")
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
        if np.any(self.var_lo > self.var_hi):
            bad = int(np.flatnonzero(self.var_lo > self.var_hi)[0])
            raise LpError(f"variable {bad}: lower bound exceeds upper bound")
        if np.any(np.isnan(self.var_lo)) or np.any(np.isnan(self.var_hi)):
            raise LpError("variable bounds must not be NaN")
        object.__setattr__(self, "rows", tuple(self.rows))
        for r, row in enumerate(self.rows):
            self._check_row(row, r)
            if not np.isfinite(row.rhs):
                raise LpError(f"row {r}: right-hand side must be finite")

    def _check_row(self, row: LpRow, r: int) -> None:
        if row.indices and (min(row.indices) < 0 or max(row.indices) >= self.num_vars):
            bad = next(k for k in row.indices if not 0 <= k < self.num_vars)
            raise LpError(f"row {r}: column index {bad} out of range [0, {self.num_vars})")

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @cached_property
    def matrix(self) -> sparse.csr_matrix:
        """Constraint matrix (num_rows x num_vars), built once per model."""
        data: List[float] = []
        row_idx: List[int] = []
        col_idx: List[int] = []
        for r, row in enumerate(self.rows):
            data.extend(row.coefs)
            col_idx.extend(row.indices)
            row_idx.extend([r] * len(row.indices))
        return sparse.csr_matrix(
            (np.asarray(data, dtype=np.float64), (np.asarray(row_idx, dtype=np.intp), np.asarray(col_idx, dtype=np.intp))),
            shape=(self.num_rows, self.num_vars),
        )

    @cached_property
    def row_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        lo = np.empty(self.num_rows)
        hi = np.empty(self.num_rows)
        for r, row in enumerate(self.rows):
            lo[r], hi[r] = row.bounds()
        return lo, hi

    def add_rows(self, new_rows: Iterable[LpRow]) -> "LpModel":
        """Return a model with ``new_rows`` appended."""
        extra = tuple(new_rows)
        for offset, row in enumerate(extra):
            self._check_row(row, self.num_rows + offset)
        return replace(self, rows=self.rows + extra)

    def select_rows(self, keep: Sequence[int]) -> "LpModel":
        """Return a model with only the rows at positions ``keep`` (in that order)."""
        return replace(self, rows=tuple(self.rows[r] for r in keep))

    def with_bounds(self, var_lo: Optional[np.ndarray] = None, var_hi: Optional[np.ndarray] = None) -> "LpModel":
        return replace(
            self,
            var_lo=self.var_lo if var_lo is None else var_lo,
            var_hi=self.var_hi if var_hi is None else var_hi,
        )

    def max_violation(self, x: np.ndarray) -> float:
        """Largest row or bound violation of a primal point."""
        x = np.asarray(x, dtype=np.float64)
        worst = float(max(0.0, np.max(self.var_lo - x, initial=0.0), np.max(x - self.var_hi, initial=0.0)))
        if self.num_rows:
            act = self.matrix @ x
            lo, hi = self.row_bounds
            worst = max(worst, float(np.max(lo - act, initial=0.0)), float(np.max(act - hi, initial=0.0)))
        return worst


@dataclass(frozen=True, eq=False)
class Basis:
    """
    Simplex basis for warm starts.

    ``structural`` and ``logical`` hold one status code per column / row.
    """

    BASIC = -1
    AT_LOWER = 0
    AT_UPPER = 1
    FREE = 2

    structural: np.ndarray
    logical: np.ndarray

    def with_rows_appended(self, count: int) -> "Basis":
        """New rows enter with their logical (slack) basic."""
        extra = np.full(count, Basis.BASIC, dtype=np.int8)
        return Basis(structural=self.structural.copy(), logical=np.concatenate([self.logical, extra]))

    def select_rows(self, keep: Sequence[int]) -> "Basis":
        return Basis(structural=self.structural.copy(), logical=self.logical[np.asarray(keep, dtype=np.intp)].copy())


@dataclass(frozen=True, eq=False)
class LpSolution:
    """
    Outcome of ``lp_solve``.

    Attributes:
        status: Optimal / Infeasible / Unbounded / IterLimit
        objective_value: c^T x (nan unless Optimal)
        primal: Structural values x
        dual: Row multipliers (>= 0 on binding >= rows, <= 0 on binding <= rows)
        reduced_costs: Column reduced costs
        row_activity: A x
        iterations: Simplex pivots plus bound flips
        dual_objective: Objective recovered from the dual side
        basis: Final basis, reusable as a warm start
    """

    status: LpStatus
    objective_value: float
    primal: np.ndarray
    dual: np.ndarray
    reduced_costs: np.ndarray
    row_activity: np.ndarray
    iterations: int
    dual_objective: float = float("nan")
    basis: Optional[Basis] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def add_rows(model: LpModel, new_rows: Iterable[LpRow]) -> LpModel:
    """Functional form of ``LpModel.add_rows``."""
    return model.add_rows(new_rows)


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _format_terms(indices: Sequence[int], coefs: Sequence[float], names: Sequence[str]) -> str:
    parts = []
    for k, a in zip(indices, coefs):
        sign = "-" if a < 0 else "+"
        parts.append(f"{sign} {_format_number(abs(a))} {names[k]}")
    return " ".join(parts) if parts else "0"


def to_lp_text(model: LpModel, name: str = "model") -> str:
    """
    Export a model in CPLEX LP text format.

    Layout: ``Minimize`` / ``Subject To`` / ``Bounds`` / ``End`` with one
    constraint per line. Unnamed columns are written as x0, x1, ...; unnamed
    rows as r0, r1, ...
    """
    names = list(model.var_names) if model.var_names else [f"x{k}" for k in range(model.num_vars)]
    nz = np.flatnonzero(model.objective)
    lines = [f"\\ {name}", "Minimize", f" obj: {_format_terms(nz, model.objective[nz], names)}", "Subject To"]
    for r, row in enumerate(model.rows):
        label = row.name or f"r{r}"
        lines.append(f" {label}: {_format_terms(row.indices, row.coefs, names)} {row.relation.value} {_format_number(row.rhs)}")
    lines.append("Bounds")
    for k in range(model.num_vars):
        lo, hi = model.var_lo[k], model.var_hi[k]
        if lo == -np.inf and hi == np.inf:
            lines.append(f" {names[k]} free")
        elif lo == hi:
            lines.append(f" {names[k]} = {_format_number(lo)}")
        else:
            lo_txt = "-inf" if lo == -np.inf else _format_number(lo)
            hi_txt = "+inf" if hi == np.inf else _format_number(hi)
            lines.append(f" {lo_txt} <= {names[k]} <= {hi_txt}")
    lines.append("End")
    return "\n".join(lines) + "\n"
