"""
Benchmark package: YAML manifests and the concurrent manifest runner.
"""

from .manifest import BenchEntry, BenchManifest, ManifestError, load_manifest, parse_manifest
from .runner import CSV_COLUMNS, report_row, run_entry, run_manifest, summarize_results, write_results

__all__ = [
    "BenchEntry",
    "BenchManifest",
    "CSV_COLUMNS",
    "ManifestError",
    "load_manifest",
    "parse_manifest",
    "report_row",
    "run_entry",
    "run_manifest",
    "summarize_results",
    "write_results",
]
