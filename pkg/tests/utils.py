import contextlib
import json
import logging
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from xassoc.representations import AlignedUser, TopicVector, VideoRecord


@contextlib.contextmanager
def capture_logs(name: str = "xassoc", level: int = logging.DEBUG):
    records: list[logging.LogRecord] = []

    class Collect(logging.Handler):
        def emit(self, record: logging.LogRecord):
            records.append(record)

    logger = logging.getLogger(name)
    handler = Collect(level)
    previous = logger.level

    logger.addHandler(handler)
    logger.setLevel(level)

    try:
        yield records
    finally:
        logger.removeHandler(handler)
        logger.setLevel(previous)


def assert_gradient_close(analytic, numeric, tol: float = 1e-4, floor: float = 1e-3):
    analytic = np.asarray(analytic)
    numeric = np.asarray(numeric)

    scale = np.maximum(np.maximum(np.abs(analytic), np.abs(numeric)), floor)
    relative = np.abs(analytic - numeric) / scale
    worst = int(np.argmax(relative))

    assert relative[worst] < tol, (
        f"Relative gradient error {relative[worst]:.3e} at index {worst}: "
        f"analytic {analytic.ravel()[worst]:.10g}, numeric {numeric.ravel()[worst]:.10g}"
    )


def user(user_id: str, twitter: Iterable[float], youtube: Iterable[float]) -> AlignedUser:
    return AlignedUser(
        user_id=user_id,
        twitter=TopicVector(platform="T", entries=np.asarray(twitter, dtype=np.float64)),
        youtube=TopicVector(platform="Y", entries=np.asarray(youtube, dtype=np.float64)),
    )


def video(video_id: str, vec: Iterable[float]) -> VideoRecord:
    return VideoRecord(
        video_id=video_id, vec=TopicVector(platform="Y", entries=np.asarray(vec, dtype=np.float64))
    )


def write_jsonl(path: Path, rows: Iterable[dict]) -> Path:
    path.write_text("".join(json.dumps(row) + "\n" for row in rows), "utf-8")
    return path


def write_dataset_files(
    directory: Path,
    users: list[dict],
    videos: list[dict],
    interactions: list[dict],
    dims: Optional[dict[str, int]] = None,
) -> Path:
    directory.mkdir(parents=True, exist_ok=True)

    write_jsonl(directory / "users.jsonl", users)
    write_jsonl(directory / "videos.jsonl", videos)
    write_jsonl(directory / "interactions.jsonl", interactions)

    if dims:
        manifest = {
            "format_version": 1,
            "source": "fixture",
            "dims": dims,
            "counts": {
                "users": len(users),
                "videos": len(videos),
                "interactions": sum(len(row["videos"]) for row in interactions),
            },
        }
        (directory / "manifest.json").write_text(json.dumps(manifest), "utf-8")

    return directory
