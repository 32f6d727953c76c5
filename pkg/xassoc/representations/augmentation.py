import logging
from typing import Sequence

import numpy as np

from xassoc.exceptions import EmptyInput, ShapeMismatch
from xassoc.numerics import Matrix, Vector, rng_stream
from xassoc.types import Platform

from .types import AlignedUser, AugmentedExample, ExampleKind

logger = logging.getLogger(__name__)

# Group order for the thirds split; the remainder goes to the first group.
THIRDS: tuple[ExampleKind, ExampleKind, ExampleKind] = (
    "real_T_avg_Y",
    "avg_T_real_Y",
    "real_both",
)


def platform_mean(users: Sequence[AlignedUser], platform: Platform) -> Vector:
    if not users:
        raise EmptyInput("cannot average an empty user list")

    return np.mean(np.stack([user.on(platform) for user in users]), axis=0)


def derive_user_repr_from_videos(video_vecs: Sequence[Vector]) -> Vector:
    """A user's video-platform representation: the mean of the videos they consumed."""
    if not video_vecs:
        raise EmptyInput("user has no interacted videos")

    dims = {vec.shape for vec in video_vecs}
    if len(dims) != 1:
        raise ShapeMismatch(f"video vectors have mixed shapes {sorted(dims)}")

    return np.mean(np.stack(video_vecs), axis=0)


def augment_training_set(
    train_users: Sequence[AlignedUser], mean_T: Vector, mean_Y: Vector, seed: int = 0
) -> list[AugmentedExample]:
    if train_users:
        dim_T = train_users[0].twitter.dim
        dim_Y = train_users[0].youtube.dim

        if mean_T.shape != (dim_T,) or mean_Y.shape != (dim_Y,):
            raise ShapeMismatch(
                f"means {mean_T.shape}/{mean_Y.shape} do not match dims {dim_T}/{dim_Y}"
            )

    n = len(train_users)
    kinds: list[ExampleKind]

    if n < 3:
        logger.warning("Only %d training users; no augmented examples are built", n)
        ordered = list(train_users)
        kinds = ["real_both"] * n
    else:
        order = rng_stream(seed).permutation(n)
        ordered = [train_users[index] for index in order]

        base, remainder = divmod(n, 3)
        sizes = (base + remainder, base, base)
        kinds = [kind for kind, size in zip(THIRDS, sizes) for _ in range(size)]

    examples = []
    for user, kind in zip(ordered, kinds):
        u_T = user.twitter.entries
        u_Y = user.youtube.entries

        examples.append(
            AugmentedExample(
                user_id=user.user_id,
                kind=kind,
                input_T=mean_T if kind == "avg_T_real_Y" else u_T,
                input_Y=mean_Y if kind == "real_T_avg_Y" else u_Y,
                target_T=u_T,
                target_Y=u_Y,
            )
        )

    return examples


def stack_examples(
    examples: Sequence[AugmentedExample],
) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Batch matrices (rows = examples): inputs T, inputs Y, targets T, targets Y."""
    if not examples:
        raise EmptyInput("empty batch")

    return (
        np.stack([example.input_T for example in examples]),
        np.stack([example.input_Y for example in examples]),
        np.stack([example.target_T for example in examples]),
        np.stack([example.target_Y for example in examples]),
    )
