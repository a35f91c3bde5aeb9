"""
Benchmark manifests.

A manifest is a YAML document:

    defaults:
      format: tsplib
      alpha: 2
      setting: "1HSL"
      time_limit_s: 900
      seed: 0
    entries:
      - {instance: ../tsplib/att48.tsp, p: 10}
      - {instance: ../tsplib/att48.tsp, p: 20, alpha: 3}

Instance paths are relative to the manifest file.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import structlog
import yaml
from pydantic import BaseModel, Field, ValidationError

from ..instance.models import InstanceFormat
from ..solver.config import Setting

logger = structlog.get_logger()


class ManifestError(Exception):
    """Manifest could not be read or validated."""


class ManifestDefaults(BaseModel):
    format: InstanceFormat = InstanceFormat.TSPLIB
    alpha: int = Field(default=2, ge=1)
    setting: Setting = Setting.S1HSL
    time_limit_s: float = Field(default=1800.0, gt=0)
    seed: int = 0


class ManifestEntry(BaseModel):
    instance: str = Field(min_length=1)
    p: int = Field(ge=1)
    format: Optional[InstanceFormat] = None
    alpha: Optional[int] = Field(default=None, ge=1)
    setting: Optional[Setting] = None
    time_limit_s: Optional[float] = Field(default=None, gt=0)
    seed: Optional[int] = None


class ManifestFile(BaseModel):
    defaults: ManifestDefaults = Field(default_factory=ManifestDefaults)
    entries: List[ManifestEntry] = Field(default_factory=list)


@dataclass(frozen=True)
class BenchEntry:
    """One fully resolved solve request."""

    instance: Path
    format: InstanceFormat
    p: int
    alpha: int
    setting: Setting
    time_limit_s: float
    seed: int

    @property
    def label(self) -> str:
        return f"{self.instance.stem}/p={self.p}/alpha={self.alpha}/{self.setting.value}"


@dataclass(frozen=True)
class BenchManifest:
    entries: Tuple[BenchEntry, ...]
    source: Optional[Path] = None

    def __len__(self) -> int:
        return len(self.entries)


def parse_manifest(text: str, base_dir: Union[str, Path] = ".") -> BenchManifest:
    """
    Parse manifest text, resolving instance paths against ``base_dir``.

    Raises:
        ManifestError: YAML or schema errors
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ManifestError(f"invalid YAML: {e}") from e
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ManifestError("manifest must be a YAML mapping")
    try:
        parsed = ManifestFile.model_validate(raw)
    except ValidationError as e:
        raise ManifestError(f"invalid manifest: {e}") from e

    base = Path(base_dir)
    d = parsed.defaults
    entries = []
    for e in parsed.entries:
        path = Path(e.instance)
        if not path.is_absolute():
            path = base / path
        entries.append(
            BenchEntry(
                instance=path,
                format=e.format or d.format,
                p=e.p,
                alpha=e.alpha if e.alpha is not None else d.alpha,
                setting=e.setting or d.setting,
                time_limit_s=e.time_limit_s if e.time_limit_s is not None else d.time_limit_s,
                seed=e.seed if e.seed is not None else d.seed,
            )
        )
    return BenchManifest(entries=tuple(entries))


def load_manifest(path: Union[str, Path]) -> BenchManifest:
    """Read a manifest file; instance paths resolve relative to its directory."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ManifestError(f"cannot read manifest {path}: {e}") from e
    manifest = parse_manifest(text, base_dir=path.parent)
    logger.debug("Manifest loaded", path=str(path), entries=len(manifest))
    return BenchManifest(entries=manifest.entries, source=path)
