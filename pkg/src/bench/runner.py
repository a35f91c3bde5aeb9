"""
Concurrent manifest runner.

Each entry is solved in a worker thread; at most ``jobs`` solves run at once.
Rows are written in manifest order: the CSV is rewritten with the finished
prefix every time an entry completes.
"""

from __future__ import annotations

import asyncio
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd
import structlog

from ..cuts.models import CutFamily
from ..instance.builders import load_instance
from ..instance.models import InstanceError
from ..solver.branch_and_cut import solve
from ..solver.config import BncConfig
from ..solver.models import RunReport, SolverError, SolveStatus
from .manifest import BenchEntry, BenchManifest

logger = structlog.get_logger()

CSV_COLUMNS = [
    "instance",
    "n",
    "p",
    "alpha",
    "setting",
    "UB",
    "LB",
    "root_LB",
    "time_s",
    "nodes",
    "status",
    "cuts_linking",
    "cuts_ub",
    "cuts_lifted",
    "fixings",
]

Row = Dict[str, Any]


def report_row(entry: BenchEntry, n: int, report: RunReport) -> Row:
    return {
        "instance": report.instance or entry.instance.stem,
        "n": n,
        "p": entry.p,
        "alpha": entry.alpha,
        "setting": entry.setting.value,
        "UB": report.UB,
        "LB": report.LB,
        "root_LB": report.root_LB,
        "time_s": round(report.wall_time_s, 3),
        "nodes": report.nodes,
        "status": report.status.value,
        "cuts_linking": report.cuts(CutFamily.LINKING.value),
        "cuts_ub": report.cuts(CutFamily.SIMPLE_UB.value) + report.cuts(CutFamily.GENERAL_UB.value),
        "cuts_lifted": report.cuts(CutFamily.LIFTED.value),
        "fixings": report.fixings,
    }


def _error_row(entry: BenchEntry) -> Row:
    return {
        "instance": entry.instance.stem,
        "n": 0,
        "p": entry.p,
        "alpha": entry.alpha,
        "setting": entry.setting.value,
        "UB": np.nan,
        "LB": np.nan,
        "root_LB": np.nan,
        "time_s": 0.0,
        "nodes": 0,
        "status": SolveStatus.ERROR.value,
        "cuts_linking": 0,
        "cuts_ub": 0,
        "cuts_lifted": 0,
        "fixings": 0,
    }


def run_entry(entry: BenchEntry) -> Row:
    """Solve one manifest entry; any failure becomes an Error row so the manifest keeps going."""
    try:
        inst = load_instance(entry.instance, entry.format)
        config = BncConfig.from_settings(
            setting=entry.setting,
            time_limit_s=entry.time_limit_s,
            seed=entry.seed,
        )
        report = solve(inst, entry.p, entry.alpha, config)
    except (InstanceError, SolverError) as e:
        logger.error("Benchmark entry failed", entry=entry.label, error=str(e))
        return _error_row(entry)
    except Exception as e:
        logger.exception("Benchmark entry crashed", entry=entry.label, error=str(e))
        return _error_row(entry)
    return report_row(entry, inst.n, report)


def results_frame(rows: List[Row]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def write_results(rows: List[Row], out: Union[str, Path]) -> None:
    out = Path(out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True, exist_ok=True)
    results_frame(rows).to_csv(out, index=False)


async def run_manifest(
    manifest: BenchManifest,
    jobs: int = 1,
    out: Optional[Union[str, Path]] = None,
) -> List[Row]:
    """
    Run every entry with at most ``jobs`` concurrent solves.

    Returns rows in manifest order. When ``out`` is given the CSV is written
    up front (header only) and refreshed as the finished prefix grows.
    """
    jobs = max(1, jobs)
    sem = asyncio.Semaphore(jobs)
    results: List[Optional[Row]] = [None] * len(manifest.entries)
    flushed = 0

    if out is not None:
        write_results([], out)

    logger.info("Benchmark started", entries=len(manifest.entries), jobs=jobs)

    async def run_one(pos: int, entry: BenchEntry) -> None:
        nonlocal flushed
        async with sem:
            logger.info("Benchmark entry started", entry=entry.label)
            row = await asyncio.to_thread(run_entry, entry)
        results[pos] = row
        logger.info("Benchmark entry finished", entry=entry.label, status=row["status"], ub=row["UB"], lb=row["LB"])
        ready = flushed
        while ready < len(results) and results[ready] is not None:
            ready += 1
        if ready > flushed:
            flushed = ready
            if out is not None:
                write_results([r for r in results[:flushed] if r is not None], out)

    await asyncio.gather(*(run_one(pos, entry) for pos, entry in enumerate(manifest.entries)))
    return [r for r in results if r is not None]


def summarize_results(rows: List[Row]) -> pd.DataFrame:
    """
    Per-setting summary: instances, solved to optimality, mean and max gap,
    total time.
    """
    columns = ["setting", "instances", "optimal", "mean_gap", "max_gap", "total_time_s"]
    df = results_frame(rows)
    if df.empty:
        return pd.DataFrame(columns=columns)
    ub = df["UB"].astype(float)
    lb = df["LB"].astype(float)
    gap = ((ub - lb) / ub.where(ub != 0)).fillna(0.0).clip(lower=0.0)
    gap = gap.where(np.isfinite(ub), np.inf)
    df = df.assign(gap=gap, optimal=(df["status"] == SolveStatus.OPTIMAL.value))
    summary = (
        df.groupby("setting", sort=True)
        .agg(
            instances=("instance", "size"),
            optimal=("optimal", "sum"),
            mean_gap=("gap", "mean"),
            max_gap=("gap", "max"),
            total_time_s=("time_s", "sum"),
        )
        .reset_index()
    )
    summary["optimal"] = summary["optimal"].astype(int)
    return summary[columns]
