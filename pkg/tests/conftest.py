from pathlib import Path
from typing import NamedTuple

import numpy as np
import pytest

from xassoc.representations import SyntheticConfig, gen_synthetic, save_dataset
from xassoc.representations.types import Dataset
from tests.utils import write_dataset_files


class FixtureFiles(NamedTuple):
    directory: Path
    users: Path
    videos: Path
    interactions: Path


SMALL_SYNTHETIC = dict(
    n_users=120,
    dim_T=12,
    dim_Y=10,
    latent_dim=4,
    coarse_topics=4,
    n_clusters=3,
    n_videos=60,
    videos_per_user=6,
    video_pool=15,
    seed=0,
)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def three_user_files(tmp_path: Path) -> FixtureFiles:
    """Three users on T=3 / Y=2 topics and four videos, every video watched by someone."""
    directory = write_dataset_files(
        tmp_path / "three",
        users=[
            {"id": "alice", "twitter": [0.2, 0.3, 0.5], "youtube": [0.4, 0.6]},
            {"id": "bob", "twitter": [1.0, 0.0, 0.0], "youtube": [0.9, 0.1]},
            {"id": "carol", "twitter": [0.1, 0.1, 0.8], "youtube": [0.5, 0.5]},
        ],
        videos=[
            {"id": "v1", "vec": [0.7, 0.3]},
            {"id": "v2", "vec": [0.2, 0.8]},
            {"id": "v3", "vec": [0.5, 0.5]},
            {"id": "v4", "vec": [1.0, 0.0]},
        ],
        interactions=[
            {"user": "alice", "videos": ["v1", "v2"]},
            {"user": "bob", "videos": ["v3", "v4"]},
            {"user": "carol", "videos": ["v1", "v4"]},
        ],
        dims={"T": 3, "Y": 2},
    )

    return FixtureFiles(
        directory=directory,
        users=directory / "users.jsonl",
        videos=directory / "videos.jsonl",
        interactions=directory / "interactions.jsonl",
    )


@pytest.fixture(scope="session")
def small_config() -> SyntheticConfig:
    return SyntheticConfig(**SMALL_SYNTHETIC)


@pytest.fixture(scope="session")
def small_dataset(small_config: SyntheticConfig) -> Dataset:
    return gen_synthetic(small_config)


@pytest.fixture
def small_dataset_dir(tmp_path: Path, small_dataset: Dataset) -> Path:
    return save_dataset(small_dataset, tmp_path / "synthetic")
