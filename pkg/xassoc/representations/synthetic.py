"""Synthetic aligned-user datasets with planted disparity and granularity.

Each user has a shared latent factor `z` and one private factor per platform.
The T-side common part is a sharpened positive projection of `z` over the fine
topics; the Y-side common part is the same distribution summed into coarse
topics through the granularity map. `disparity` mixes in the private parts:

    u_T = normalize((1 - δ) * c_T + δ * s_T + noise)
    u_Y = normalize((1 - δ) * G c_T + δ * s_Y + noise)

With δ = 0 and no noise, u_Y is exactly the aggregation of u_T. Latent factors
are drawn around a few cluster centres so users form groups on each platform.
"""
import logging

import numpy as np

from xassoc.exceptions import InvalidConfig
from xassoc.numerics import RNG_ALGORITHM, Matrix, rng_stream

from .augmentation import derive_user_repr_from_videos
from .types import (
    AlignedUser,
    Dataset,
    InteractionSet,
    SyntheticConfig,
    TopicVector,
    VideoRecord,
)

logger = logging.getLogger(__name__)


def default_granularity_map(dim_T: int, coarse_topics: int) -> list[int]:
    """Contiguous blocks of fine topics per coarse topic."""
    return [index * coarse_topics // dim_T for index in range(dim_T)]


def granularity_matrix(cfg: SyntheticConfig) -> Matrix:
    """(coarse_topics x dim_T) 0/1 matrix summing fine topics into coarse ones."""
    mapping = cfg.granularity_map
    if mapping is None:
        mapping = default_granularity_map(cfg.dim_T, cfg.coarse_topics)

    if len(mapping) != cfg.dim_T:
        raise InvalidConfig(
            f"granularity map has {len(mapping)} entries, expected dim_T={cfg.dim_T}"
        )

    if any(group < 0 or group >= cfg.coarse_topics for group in mapping):
        raise InvalidConfig(
            f"granularity map targets must lie in [0, {cfg.coarse_topics})"
        )

    if missing := set(range(cfg.coarse_topics)) - set(mapping):
        raise InvalidConfig(
            f"granularity map is not onto: coarse topics {sorted(missing)} unused"
        )

    aggregation = np.zeros((cfg.coarse_topics, cfg.dim_T))
    aggregation[mapping, np.arange(cfg.dim_T)] = 1.0

    return aggregation


def _normalize_rows(values: Matrix) -> Matrix:
    return values / values.sum(axis=1, keepdims=True)


def _softplus(values: Matrix) -> Matrix:
    return np.logaddexp(0.0, values)


class _Generator:
    def __init__(self, cfg: SyntheticConfig):
        self.cfg = cfg
        self.rng = rng_stream(cfg.seed)
        self.aggregation = granularity_matrix(cfg)

        latent = cfg.latent_dim
        self.A_T = self.rng.normal(size=(cfg.dim_T, latent))
        self.B_T = self.rng.normal(size=(cfg.dim_T, latent))
        self.B_Y = self.rng.normal(size=(cfg.dim_Y, latent))

        self.centres = {
            name: self.rng.normal(size=(cfg.n_clusters, latent))
            for name in ("common", "T", "Y")
        }

    def latent(self, name: str, n: int) -> Matrix:
        labels = self.rng.integers(0, self.cfg.n_clusters, size=n)
        spread = self.rng.normal(size=(n, self.cfg.latent_dim))

        return self.centres[name][labels] + self.cfg.cluster_spread * spread

    def topics(self, projection: Matrix, factors: Matrix) -> Matrix:
        scale = self.cfg.sharpness / np.sqrt(self.cfg.latent_dim)
        return _normalize_rows(_softplus(scale * factors @ projection.T))

    def noise(self, n: int, dim: int) -> Matrix:
        return self.cfg.noise * np.abs(self.rng.normal(size=(n, dim))) / dim

    def profiles(self, n: int) -> tuple[Matrix, Matrix]:
        cfg = self.cfg
        delta = cfg.disparity

        c_T = self.topics(self.A_T, self.latent("common", n))
        s_T = self.topics(self.B_T, self.latent("T", n))
        s_Y = self.topics(self.B_Y, self.latent("Y", n))

        c_Y = np.zeros((n, cfg.dim_Y))
        c_Y[:, : cfg.coarse_topics] = c_T @ self.aggregation.T

        noise_T = self.noise(n, cfg.dim_T)
        noise_Y = self.noise(n, cfg.dim_Y)

        u_T = _normalize_rows((1.0 - delta) * c_T + delta * s_T + noise_T)
        u_Y = _normalize_rows((1.0 - delta) * c_Y + delta * s_Y + noise_Y)

        return u_T, u_Y


def _squared_distances(left: Matrix, right: Matrix) -> Matrix:
    distances = (
        (left * left).sum(axis=1)[:, None]
        + (right * right).sum(axis=1)[None, :]
        - 2.0 * left @ right.T
    )
    return np.maximum(distances, 0.0)


def gen_synthetic(cfg: SyntheticConfig) -> Dataset:
    generator = _Generator(cfg)

    u_T, u_Y = generator.profiles(cfg.n_users)
    _, video_vecs = generator.profiles(cfg.n_videos)

    user_ids = [f"u{index:05d}" for index in range(cfg.n_users)]
    video_ids = [f"v{index:05d}" for index in range(cfg.n_videos)]

    # Each user consumes a few of the videos closest to their Y profile.
    distances = _squared_distances(u_Y, video_vecs)
    nearest = np.argsort(distances, axis=1, kind="stable")[:, : cfg.video_pool]

    by_user: dict[str, frozenset[str]] = {}
    chosen_per_user: list[np.ndarray] = []

    for row, user_id in enumerate(user_ids):
        chosen = generator.rng.choice(
            nearest[row], size=cfg.videos_per_user, replace=False
        )
        chosen_per_user.append(chosen)
        by_user[user_id] = frozenset(video_ids[index] for index in chosen)

    if cfg.derive_youtube_from_videos:
        u_Y = np.stack(
            [
                derive_user_repr_from_videos([video_vecs[index] for index in chosen])
                for chosen in chosen_per_user
            ]
        )

    users = [
        AlignedUser(
            user_id=user_id,
            twitter=TopicVector(platform="T", entries=u_T[row]),
            youtube=TopicVector(platform="Y", entries=u_Y[row]),
        )
        for row, user_id in enumerate(user_ids)
    ]
    videos = [
        VideoRecord(video_id=video_id, vec=TopicVector(platform="Y", entries=video_vecs[row]))
        for row, video_id in enumerate(video_ids)
    ]

    logger.info(
        "Generated %d users and %d videos (disparity=%.2f, seed=%d)",
        cfg.n_users,
        cfg.n_videos,
        cfg.disparity,
        cfg.seed,
    )

    return Dataset(
        users=users,
        videos=videos,
        interactions=InteractionSet(by_user=by_user),
        dims={"T": cfg.dim_T, "Y": cfg.dim_Y},
        provenance={
            "source": "synthetic",
            "config": cfg.model_dump(),
            "seed": cfg.seed,
            "rng": RNG_ALGORITHM,
        },
    )
