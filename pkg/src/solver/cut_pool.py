"""
Cut pool with deactivation of long-slack rows.

A row whose slack exceeds ``SLACK_TOL`` with a basic logical in
``PURGE_AFTER`` consecutive LP solves is deactivated and can be re-activated
later if a point violates it again. Lifted rows are retired as soon as a newer
lifted row for the same customer dominates them (coefficients at least as
large, all columns nonnegative); retired rows no longer count toward the pool
size and are only revived by being separated again.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

import numpy as np
import structlog

from ..cuts.models import VIOLATION_TOL, CutFamily, CutRow
from ..lp.model import Basis, Relation

logger = structlog.get_logger()

SLACK_TOL = 1e-4
PURGE_AFTER = 10
DOMINANCE_TOL = 1e-12


def dominates(newer: CutRow, older: CutRow) -> bool:
    """True when ``newer`` implies ``older`` for nonnegative columns (both <= rows)."""
    if newer.relation is not Relation.LE or older.relation is not Relation.LE:
        return False
    if newer.rhs > older.rhs + DOMINANCE_TOL:
        return False
    new_coefs = newer.coefficients
    old_coefs = older.coefficients
    return all(
        old_coefs.get(k, 0.0) <= new_coefs.get(k, 0.0) + DOMINANCE_TOL
        for k in set(new_coefs) | set(old_coefs)
    )


@dataclass
class PoolEntry:
    row: CutRow
    active: bool = True
    slack_rounds: int = 0
    retired: bool = False


class CutPool:
    def __init__(self) -> None:
        self._entries: List[PoolEntry] = []
        self._seen: Dict[CutRow, int] = {}
        self._lifted: Dict[int, List[int]] = {}
        self.added = Counter()
        self.deactivated = 0
        self.retired = 0

    def __len__(self) -> int:
        return sum(1 for e in self._entries if not e.retired)

    def add(self, rows: Iterable[CutRow]) -> List[int]:
        """Insert new rows, returning their ids; duplicates are re-activated instead."""
        ids: List[int] = []
        for row in rows:
            existing = self._seen.get(row)
            if existing is not None:
                entry = self._entries[existing]
                if not entry.active:
                    entry.active = True
                    entry.retired = False
                    entry.slack_rounds = 0
                    ids.append(existing)
                continue
            key = len(self._entries)
            self._entries.append(PoolEntry(row=row))
            self._seen[row] = key
            self.added[row.family.value] += 1
            if row.family is CutFamily.LIFTED and row.origin_customer is not None:
                self._retire_dominated(row.origin_customer, key)
            ids.append(key)
        return ids

    def _retire_dominated(self, customer: int, key: int) -> None:
        newer = self._entries[key].row
        kept = [key]
        for old in self._lifted.get(customer, []):
            entry = self._entries[old]
            if not entry.retired and dominates(newer, entry.row):
                entry.retired = True
                entry.active = False
                self.retired += 1
                logger.debug("Lifted row retired", customer=customer, key=old, by=key)
            else:
                kept.append(old)
        self._lifted[customer] = kept

    def active_ids(self) -> List[int]:
        return [k for k, e in enumerate(self._entries) if e.active]

    def row(self, key: int) -> CutRow:
        return self._entries[key].row

    def rows(self) -> List[CutRow]:
        return [e.row for e in self._entries]

    def record_solve(self, keys: Sequence[int], slacks: np.ndarray, logical: np.ndarray) -> int:
        """
        Update slack counters for the pool rows of one LP, in LP row order.

        Returns the number of rows deactivated.
        """
        dropped = 0
        for key, slack, status in zip(keys, slacks, logical):
            entry = self._entries[key]
            if slack > SLACK_TOL and status == Basis.BASIC:
                entry.slack_rounds += 1
                if entry.slack_rounds >= PURGE_AFTER:
                    entry.active = False
                    entry.slack_rounds = 0
                    dropped += 1
            else:
                entry.slack_rounds = 0
        if dropped:
            self.deactivated += dropped
            logger.debug("Cut pool rows deactivated", dropped=dropped, active=len(self.active_ids()))
        return dropped

    def reactivate_violated(self, x: np.ndarray) -> List[int]:
        keys = []
        for key, entry in enumerate(self._entries):
            if not entry.active and not entry.retired and entry.row.violation(x) > VIOLATION_TOL:
                entry.active = True
                entry.slack_rounds = 0
                keys.append(key)
        return keys
