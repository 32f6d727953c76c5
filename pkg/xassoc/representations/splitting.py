import logging
import math

from xassoc.exceptions import EmptyInput, InvalidConfig
from xassoc.numerics import rng_stream

from .types import Dataset, InteractionSet

logger = logging.getLogger(__name__)


def _subset(dataset: Dataset, user_ids: set[str], part: str) -> Dataset:
    return Dataset(
        users=[user for user in dataset.users if user.user_id in user_ids],
        videos=dataset.videos,
        interactions=InteractionSet(
            by_user={
                user: videos
                for user, videos in dataset.interactions.by_user.items()
                if user in user_ids
            }
        ),
        dims=dict(dataset.dims),
        provenance={**dataset.provenance, "part": part},
    )


def split_train_test(
    dataset: Dataset, train_fraction: float = 0.8, seed: int = 0
) -> tuple[Dataset, Dataset]:
    """User-level split; the train part has floor(n * fraction) users, at least one each side."""
    if not 0 < train_fraction < 1:
        raise InvalidConfig("train_fraction must lie strictly between 0 and 1")

    n = len(dataset.users)
    if n < 2:
        raise EmptyInput(f"need at least 2 users to split, got {n}")

    n_train = math.floor(n * train_fraction + 1e-9)
    n_train = min(max(n_train, 1), n - 1)

    order = rng_stream(seed).permutation(n)
    train_ids = {dataset.users[index].user_id for index in order[:n_train]}
    test_ids = {dataset.users[index].user_id for index in order[n_train:]}

    logger.info("Split %d users into %d train / %d test", n, n_train, n - n_train)

    return _subset(dataset, train_ids, "train"), _subset(dataset, test_ids, "test")
