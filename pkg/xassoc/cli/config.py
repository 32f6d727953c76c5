import json
import logging
import platform
import time
from importlib import metadata
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from xassoc.models import ModelKind, ModelSpec
from xassoc.numerics import RNG_ALGORITHM
from xassoc.types import Direction, SubstituteMode

logger = logging.getLogger(__name__)

MANIFEST_FORMAT_VERSION = 1


class PipelineSettings(BaseModel):
    """How a dataset directory becomes train/test users; replayed from checkpoints."""

    min_user_interactions: int = Field(default=3, ge=1)
    min_video_consumers: int = Field(default=3, ge=1)
    train_fraction: float = Field(default=0.8, gt=0, lt=1)
    seed: int = 0


class RunConfig(BaseModel):
    command: str
    inputs: dict[str, str] = {}
    outputs: dict[str, str] = {}

    model: Optional[ModelKind] = None
    direction: Direction = "t2y"
    spec: Optional[ModelSpec] = None
    substitute: SubstituteMode = "mean"
    k: int = Field(default=10, ge=1)
    seed: int = 0
    pipeline: PipelineSettings = Field(default_factory=PipelineSettings)
    extra: dict[str, Any] = {}

    @model_validator(mode="after")
    def check_inputs(self) -> "RunConfig":
        missing = [f"{name}={path}" for name, path in self.inputs.items() if not Path(path).exists()]
        if missing:
            raise ValueError(f"missing input(s): {', '.join(missing)}")

        return self


class RunManifest(BaseModel):
    format_version: int = MANIFEST_FORMAT_VERSION
    command: str
    config: dict[str, Any]
    seed: int
    rng: str = RNG_ALGORITHM
    versions: dict[str, str]
    wall_time_seconds: float
    artifacts: list[str]


def package_versions() -> dict[str, str]:
    try:
        xassoc_version = metadata.version("xassoc")
    except metadata.PackageNotFoundError:
        xassoc_version = "unknown"

    return {
        "xassoc": xassoc_version,
        "numpy": np.__version__,
        "python": platform.python_version(),
    }


def manifest_path(out: str | Path) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".manifest.json")


def write_manifest(config: RunConfig, started: float, artifacts: list[Path]) -> Path:
    manifest = RunManifest(
        command=config.command,
        config=config.model_dump(mode="json"),
        seed=config.seed,
        versions=package_versions(),
        wall_time_seconds=round(time.perf_counter() - started, 6),
        artifacts=[str(path) for path in artifacts],
    )

    path = manifest_path(artifacts[0])
    path.write_text(json.dumps(manifest.model_dump(), indent=2) + "\n", "utf-8")
    logger.debug("Run manifest written to %s", path)

    return path
