import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Iterator, Optional, Type, TypeVar

import numpy as np
from pydantic import BaseModel, ValidationError

from xassoc.exceptions import DataLoadError, InvalidConfig
from xassoc.numerics import RNG_ALGORITHM
from xassoc.types import Platform

from .types import (
    DATASET_FORMAT_VERSION,
    DEFAULT_DIMS,
    INTERACTIONS_FILE,
    MANIFEST_FILE,
    USERS_FILE,
    VIDEOS_FILE,
    AlignedUser,
    Dataset,
    DatasetManifest,
    InteractionLine,
    InteractionSet,
    SyntheticConfig,
    TopicVector,
    UserLine,
    VideoLine,
    VideoRecord,
)

logger = logging.getLogger(__name__)

# Sums further than this from 1 are rejected rather than renormalized
SIMPLEX_TOLERANCE = 1e-3

TLine = TypeVar("TLine", bound=BaseModel)


def make_topic_vector(platform: Platform, values, dim: int) -> TopicVector:
    """Validate a near-simplex vector and renormalize it onto the simplex."""
    entries = np.asarray(values, dtype=np.float64)

    if entries.ndim != 1 or entries.shape[0] != dim:
        raise ValueError(
            f"platform {platform} vector has {entries.size} entries, expected {dim}"
        )

    if not np.all(np.isfinite(entries)):
        raise ValueError(f"platform {platform} vector contains NaN or Inf")

    if np.any(entries < 0) or np.any(entries > 1.0 + SIMPLEX_TOLERANCE):
        raise ValueError(f"platform {platform} vector has entries outside [0, 1]")

    total = entries.sum()
    if abs(total - 1.0) > SIMPLEX_TOLERANCE:
        raise ValueError(f"platform {platform} vector sums to {total}, not 1")

    return TopicVector(platform=platform, entries=entries / total)


def _read_lines(path: Path, schema: Type[TLine]) -> Iterator[tuple[int, TLine]]:
    try:
        handle = path.open("r", encoding="utf-8")
    except OSError as exc:
        raise DataLoadError(f"cannot open file: {exc.strerror}", path=str(path))

    with handle:
        for number, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue

            try:
                yield number, schema.model_validate(json.loads(raw))
            except json.JSONDecodeError as exc:
                raise DataLoadError(f"malformed JSON: {exc.msg}", str(path), number)
            except ValidationError as exc:
                raise DataLoadError(
                    f"invalid record: {exc.errors()[0]['msg']}", str(path), number
                )


def load_dataset(
    users_path: str | Path,
    videos_path: str | Path,
    interactions_path: str | Path,
    dims: Optional[dict[Platform, int]] = None,
) -> Dataset:
    dims = dims or dict(DEFAULT_DIMS)
    users_path, videos_path, interactions_path = (
        Path(users_path),
        Path(videos_path),
        Path(interactions_path),
    )

    users: list[AlignedUser] = []
    user_lines: list[int] = []
    for number, line in _read_lines(users_path, UserLine):
        try:
            user = AlignedUser(
                user_id=line.id,
                twitter=make_topic_vector("T", line.twitter, dims["T"]),
                youtube=make_topic_vector("Y", line.youtube, dims["Y"]),
            )
        except ValueError as exc:
            raise DataLoadError(f"user {line.id!r}: {exc}", str(users_path), number)

        users.append(user)
        user_lines.append(number)

    videos: list[VideoRecord] = []
    video_lines: list[int] = []
    for number, line in _read_lines(videos_path, VideoLine):
        try:
            vec = make_topic_vector("Y", line.vec, dims["Y"])
        except ValueError as exc:
            raise DataLoadError(f"video {line.id!r}: {exc}", str(videos_path), number)

        videos.append(VideoRecord(video_id=line.id, vec=vec))
        video_lines.append(number)

    _check_unique([user.user_id for user in users], user_lines, "user", users_path)
    _check_unique([video.video_id for video in videos], video_lines, "video", videos_path)

    known_users = {user.user_id for user in users}
    known_videos = {video.video_id for video in videos}
    by_user: dict[str, set[str]] = {}

    for number, line in _read_lines(interactions_path, InteractionLine):
        if line.user not in known_users:
            raise DataLoadError(
                f"unknown user_id {line.user!r}", str(interactions_path), number
            )

        if unknown := [video for video in line.videos if video not in known_videos]:
            raise DataLoadError(
                f"user {line.user!r} references unknown video_id {unknown[0]!r}",
                str(interactions_path),
                number,
            )

        by_user.setdefault(line.user, set()).update(line.videos)

    logger.info(
        "Loaded %d users, %d videos, %d interaction lists",
        len(users),
        len(videos),
        len(by_user),
    )

    return Dataset(
        users=users,
        videos=videos,
        interactions=InteractionSet(
            by_user={user: frozenset(videos) for user, videos in by_user.items()}
        ),
        dims=dict(dims),
        provenance={
            "source": "files",
            "users": str(users_path),
            "videos": str(videos_path),
            "interactions": str(interactions_path),
        },
    )


def _check_unique(ids: list[str], line_numbers: list[int], kind: str, path: Path):
    seen: set[str] = set()

    for number, item in zip(line_numbers, ids):
        if item in seen:
            raise DataLoadError(f"duplicate {kind} id {item!r}", str(path), number)

        seen.add(item)


def read_manifest(directory: str | Path) -> Optional[DatasetManifest]:
    path = Path(directory) / MANIFEST_FILE
    if not path.exists():
        return None

    try:
        return DatasetManifest.model_validate(json.loads(path.read_text("utf-8")))
    except (json.JSONDecodeError, ValidationError) as exc:
        raise DataLoadError(f"invalid manifest: {exc}", str(path))


def load_dataset_dir(directory: str | Path) -> Dataset:
    """Load the three JSONL files from a dataset directory, taking dims from its manifest."""
    directory = Path(directory)
    manifest = read_manifest(directory)

    dims = dict(DEFAULT_DIMS)
    if manifest:
        dims = {"T": manifest.dims["T"], "Y": manifest.dims["Y"]}

    dataset = load_dataset(
        directory / USERS_FILE,
        directory / VIDEOS_FILE,
        directory / INTERACTIONS_FILE,
        dims=dims,
    )

    if manifest:
        dataset.provenance["manifest"] = manifest.model_dump()

    return dataset


def _dump_line(payload: dict) -> str:
    return json.dumps(payload, separators=(",", ":")) + "\n"


def save_dataset(dataset: Dataset, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    with (directory / USERS_FILE).open("w", encoding="utf-8") as handle:
        for user in dataset.users:
            handle.write(
                _dump_line(
                    {
                        "id": user.user_id,
                        "twitter": user.twitter.entries.tolist(),
                        "youtube": user.youtube.entries.tolist(),
                    }
                )
            )

    with (directory / VIDEOS_FILE).open("w", encoding="utf-8") as handle:
        for video in dataset.videos:
            handle.write(
                _dump_line({"id": video.video_id, "vec": video.vec.entries.tolist()})
            )

    with (directory / INTERACTIONS_FILE).open("w", encoding="utf-8") as handle:
        for user in dataset.users:
            videos = sorted(dataset.interactions.videos_of(user.user_id))
            handle.write(_dump_line({"user": user.user_id, "videos": videos}))

    provenance = dataset.provenance
    manifest = DatasetManifest(
        format_version=DATASET_FORMAT_VERSION,
        source=provenance.get("source", "unknown"),
        dims=dict(dataset.dims),
        counts={
            "users": len(dataset.users),
            "videos": len(dataset.videos),
            "interactions": sum(
                len(videos) for videos in dataset.interactions.by_user.values()
            ),
        },
        seed=provenance.get("seed"),
        rng=provenance.get("rng", RNG_ALGORITHM if "seed" in provenance else None),
        config=provenance.get("config"),
    )
    (directory / MANIFEST_FILE).write_text(
        json.dumps(manifest.model_dump(), indent=2, sort_keys=True) + "\n", "utf-8"
    )

    logger.info("Wrote dataset to %s", directory)

    return directory


def load_synthetic_config(path: str | Path) -> SyntheticConfig:
    path = Path(path)

    try:
        if path.suffix == ".toml":
            raw = tomllib.loads(path.read_text("utf-8"))
        else:
            raw = json.loads(path.read_text("utf-8"))
    except (OSError, tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise DataLoadError(f"cannot read synthetic config: {exc}", str(path))

    try:
        return SyntheticConfig.model_validate(raw)
    except ValidationError as exc:
        raise InvalidConfig(f"{path}: {exc}")
