"""
p-alpha-closest-center solver suite - Entry Point

    python -m src.main solve  --instance data/fixtures/example1.yaml --format matrix --p 3 --alpha 2
    python -m src.main bench  --manifest data/manifests/examples.yaml --out results.csv --jobs 2
    python -m src.main bound  --instance data/fixtures/example3.yaml --format matrix --p 2 --alpha 2 --method lb3
    python -m src.main verify --instance data/fixtures/example1.yaml --format matrix --p 3 --alpha 2

Exit codes: 0 success, 2 usage or input error, 3 internal error, 4 oracle mismatch.
Log verbosity comes from PACCP_LOG (quiet, info, debug).
"""

from __future__ import annotations

import argparse
import asyncio
import json
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import structlog

from src.bench.manifest import ManifestError, load_manifest
from src.bench.runner import run_manifest, summarize_results
from src.config import settings
from src.core.brute_force import brute_force_opt
from src.core.models import CoreError
from src.core.objective import enumerate_alpha_distances
from src.formulations.var_map import FormulationError
from src.instance.builders import load_instance
from src.instance.models import Instance, InstanceError, InstanceFormat
from src.lifting.bounds import fasc_value, run_lb_fixpoint
from src.lifting.lf1 import run_lb1_fixpoint
from src.lifting.models import LiftingError, LiftVariant
from src.solver.branch_and_cut import solve
from src.solver.config import BncConfig, Setting
from src.solver.models import RunReport, SolverError, SolveStatus
from src.utils.logging import configure_logging

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_MISMATCH = 4

# Absolute tolerance for solver vs brute-force agreement.
VERIFY_TOL = 1e-6

SUMMARY_HEADER = "instance,p,alpha,setting,UB,LB,time_s,nodes,status"

BOUND_METHODS = {
    "lb3": LiftVariant.L3,
    "lb3v": LiftVariant.L3V,
    "lb1": LiftVariant.L1,
    "fasc": LiftVariant.L3,
    "fasc-v": LiftVariant.L3V,
}

# Errors caused by the caller's input rather than by the solver.
USAGE_ERRORS = (InstanceError, ManifestError, CoreError, FormulationError, SolverError)


def _fmt(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


def summary_line(report: RunReport) -> str:
    return ",".join(
        [
            report.instance,
            str(report.p),
            str(report.alpha),
            report.setting,
            _fmt(report.UB),
            _fmt(report.LB),
            f"{report.wall_time_s:.2f}",
            str(report.nodes),
            report.status.value,
        ]
    )


# =============================================================================
# Argument parsing
# =============================================================================

def _add_instance_args(parser: argparse.ArgumentParser, p_required: bool = True) -> None:
    parser.add_argument("--instance", required=True, help="Instance file")
    parser.add_argument(
        "--format",
        required=True,
        choices=[f.value for f in InstanceFormat],
        help="Instance file format",
    )
    parser.add_argument("--p", type=int, required=p_required, help="Facilities to open")
    parser.add_argument("--alpha", type=int, required=True, help="Closest open facilities per customer")


def _add_solver_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--setting",
        choices=[s.value for s in Setting],
        default=Setting.S1HSL.value,
        help="Solver feature level",
    )
    parser.add_argument("--time-limit", type=float, default=None, help="Wall-clock limit in seconds")
    parser.add_argument("--seed", type=int, default=None, help="Seed for heuristics and separation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paccp",
        description="Exact solver suite for the p-alpha-closest-center problem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="Solve one instance by branch-and-cut")
    _add_instance_args(p_solve)
    _add_solver_args(p_solve)
    p_solve.add_argument("--out", default=None, help="Write the JSON report here")
    p_solve.set_defaults(handler=cmd_solve)

    p_bench = sub.add_parser("bench", help="Run a benchmark manifest")
    p_bench.add_argument("--manifest", required=True, help="YAML manifest")
    p_bench.add_argument("--out", required=True, help="Results CSV")
    p_bench.add_argument("--jobs", type=int, default=1, help="Concurrent solves")
    p_bench.add_argument("--summary", action="store_true", help="Print a per-setting summary table")
    p_bench.set_defaults(handler=cmd_bench)

    p_bound = sub.add_parser("bound", help="Compute a lifted lower bound")
    _add_instance_args(p_bound, p_required=False)
    p_bound.add_argument("--method", required=True, choices=sorted(BOUND_METHODS))
    p_bound.add_argument("--lb", type=float, default=None, help="Lower bound for --method fasc / fasc-v")
    p_bound.add_argument("--max-subsets", type=int, default=None, help="Alpha-subset enumeration guard")
    p_bound.set_defaults(handler=cmd_bound)

    p_verify = sub.add_parser("verify", help="Compare the solver against brute force")
    _add_instance_args(p_verify)
    _add_solver_args(p_verify)
    p_verify.add_argument("--max-subsets", type=int, default=None, help="Brute-force enumeration guard")
    p_verify.add_argument("--all-settings", action="store_true", help="Solve under every setting")
    p_verify.set_defaults(handler=cmd_verify)

    return parser


def _load(args: argparse.Namespace) -> Instance:
    inst = load_instance(args.instance, args.format)
    logger.info("Instance loaded", instance=inst.name, n=inst.n, m=inst.m, format=args.format)
    return inst


def _config(args: argparse.Namespace, setting: Optional[str] = None) -> BncConfig:
    return BncConfig.from_settings(
        setting=setting or args.setting,
        time_limit_s=args.time_limit,
        seed=args.seed,
    )


# =============================================================================
# Commands
# =============================================================================

def cmd_solve(args: argparse.Namespace) -> int:
    inst = _load(args)
    report = solve(inst, args.p, args.alpha, _config(args))
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
    line = summary_line(report)
    logger.info("Solve summary", columns=SUMMARY_HEADER, summary=line)
    print(line)
    if report.status is SolveStatus.ERROR:
        print(f"error: {report.message}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    rows = asyncio.run(run_manifest(manifest, jobs=args.jobs, out=args.out))
    logger.info("Benchmark written", out=args.out, rows=len(rows))
    if args.summary:
        print(summarize_results(rows).to_string(index=False))
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    inst = _load(args)
    variant = BOUND_METHODS[args.method]

    if args.method.startswith("fasc"):
        if args.lb is None:
            raise SolverError(f"--method {args.method} needs --lb")
        value = fasc_value(inst, args.alpha, args.lb, variant)
        print(f"{inst.name},{args.method},lb={_fmt(args.lb)},fasc={_fmt(value)}")
        return EXIT_OK

    if args.p is None:
        raise SolverError(f"--method {args.method} needs --p")
    D = enumerate_alpha_distances(inst, args.alpha, args.max_subsets)
    if variant is LiftVariant.L1:
        result = run_lb1_fixpoint(inst, args.p, args.alpha, D=D)
    else:
        result = run_lb_fixpoint(inst, args.p, args.alpha, variant, D=D)
    logger.debug("Lifted bound trace", **result.to_dict())
    print(f"{inst.name},{args.method},bound={_fmt(result.value)},iterations={result.iterations}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _load(args)
    expected, optimal_set = brute_force_opt(inst, args.p, args.alpha, max_subsets=args.max_subsets)
    logger.info("Brute force optimum", value=expected, open=[j + 1 for j in optimal_set.sorted_open()])

    chosen: List[str] = [s.value for s in Setting] if args.all_settings else [args.setting]
    status = EXIT_OK
    for setting in chosen:
        report = solve(inst, args.p, args.alpha, _config(args, setting))
        match = report.status is SolveStatus.OPTIMAL and abs(report.UB - expected) <= VERIFY_TOL
        print(
            f"{inst.name},p={args.p},alpha={args.alpha},setting={setting},"
            f"solver={_fmt(report.UB)},brute_force={_fmt(expected)},{'match' if match else 'MISMATCH'}"
        )
        if not match:
            logger.error(
                "Solver disagrees with brute force",
                setting=setting,
                solver=report.UB,
                brute_force=expected,
                status=report.status.value,
            )
            status = EXIT_MISMATCH
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(
        log_level=settings.log,
        log_file=settings.log_file,
        log_json=settings.log_json,
    )
    try:
        return args.handler(args)
    except USAGE_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LiftingError as e:
        logger.error("Bound computation failed", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as e:
        logger.exception("Unhandled error", error=str(e))
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
