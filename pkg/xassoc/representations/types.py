from dataclasses import dataclass, field
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from xassoc.numerics import Matrix, Vector
from xassoc.types import Platform

DATASET_FORMAT_VERSION = 1

USERS_FILE = "users.jsonl"
VIDEOS_FILE = "videos.jsonl"
INTERACTIONS_FILE = "interactions.jsonl"
MANIFEST_FILE = "manifest.json"

DEFAULT_DIMS: dict[Platform, int] = {"T": 60, "Y": 80}

ExampleKind = Literal["real_both", "real_T_avg_Y", "avg_T_real_Y"]


@dataclass(frozen=True)
class TopicVector:
    platform: Platform
    entries: Vector

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class AlignedUser:
    user_id: str
    twitter: TopicVector
    youtube: TopicVector

    def on(self, platform: Platform) -> Vector:
        return self.twitter.entries if platform == "T" else self.youtube.entries


@dataclass(frozen=True)
class VideoRecord:
    video_id: str
    vec: TopicVector


@dataclass(frozen=True)
class InteractionSet:
    by_user: dict[str, frozenset[str]] = field(default_factory=dict)

    def videos_of(self, user_id: str) -> frozenset[str]:
        return self.by_user.get(user_id, frozenset())


@dataclass(frozen=True)
class Dataset:
    users: list[AlignedUser]
    videos: list[VideoRecord]
    interactions: InteractionSet
    dims: dict[Platform, int] = field(default_factory=lambda: dict(DEFAULT_DIMS))
    provenance: dict[str, Any] = field(default_factory=dict)

    def user_matrix(self, platform: Platform) -> Matrix:
        """Users as rows, topics as columns."""
        if not self.users:
            return np.zeros((0, self.dims[platform]))

        return np.stack([user.on(platform) for user in self.users])

    def video_index(self) -> dict[str, VideoRecord]:
        return {video.video_id: video for video in self.videos}

    def user_ids(self) -> list[str]:
        return [user.user_id for user in self.users]


@dataclass(frozen=True)
class AugmentedExample:
    user_id: str
    kind: ExampleKind
    input_T: Vector
    input_Y: Vector
    target_T: Vector
    target_Y: Vector


# On-disk line schemas


class UserLine(BaseModel):
    id: str
    twitter: list[float]
    youtube: list[float]


class VideoLine(BaseModel):
    id: str
    vec: list[float]


class InteractionLine(BaseModel):
    user: str
    videos: list[str]


class SyntheticConfig(BaseModel):
    """Generator settings; `disparity` is the weight δ of platform-specific factors."""

    n_users: int = Field(default=2000, ge=2)
    dim_T: int = Field(default=60, ge=1)
    dim_Y: int = Field(default=80, ge=1)
    latent_dim: int = Field(default=8, ge=1)
    disparity: float = Field(default=0.3, ge=0.0, le=1.0)

    # T-topic index -> coarse Y-topic index; None means contiguous blocks
    granularity_map: Optional[list[int]] = None
    coarse_topics: int = Field(default=15, ge=1)

    noise: float = Field(default=0.05, ge=0.0)
    sharpness: float = Field(default=2.0, gt=0.0)
    n_clusters: int = Field(default=10, ge=1)
    cluster_spread: float = Field(default=0.5, ge=0.0)

    n_videos: int = Field(default=3000, ge=1)
    videos_per_user: int = Field(default=5, ge=1)
    video_pool: int = Field(default=20, ge=1)
    derive_youtube_from_videos: bool = False

    seed: int = 0

    @model_validator(mode="after")
    def check_granularity(self) -> "SyntheticConfig":
        if self.coarse_topics > self.dim_Y:
            raise ValueError("coarse_topics cannot exceed dim_Y")

        if self.coarse_topics > self.dim_T:
            raise ValueError("coarse_topics cannot exceed dim_T")

        if self.video_pool < self.videos_per_user:
            raise ValueError("video_pool must be at least videos_per_user")

        if self.video_pool > self.n_videos:
            raise ValueError("video_pool cannot exceed n_videos")

        return self


class DatasetManifest(BaseModel):
    format_version: int = DATASET_FORMAT_VERSION
    source: str
    dims: dict[str, int]
    counts: dict[str, int]
    seed: Optional[int] = None
    rng: Optional[str] = None
    config: Optional[dict[str, Any]] = None
