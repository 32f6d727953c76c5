from typing import Iterable

from xassoc.exceptions import CorpusTooSmall, EmptyInput
from xassoc.numerics import rng_stream
from xassoc.representations import InteractionSet

from .types import CandidateSet


def sample_candidates(
    user_id: str, interactions: InteractionSet, corpus: Iterable[str], seed: int
) -> CandidateSet:
    """Groundtruth videos plus as many distractors, uniformly drawn from the rest of the corpus."""
    groundtruth = interactions.videos_of(user_id)
    if not groundtruth:
        raise EmptyInput(f"user {user_id!r} has no groundtruth videos")

    pool = sorted(set(corpus) - groundtruth)
    if len(pool) < len(groundtruth):
        raise CorpusTooSmall(
            f"user {user_id!r} needs {len(groundtruth)} distractors, "
            f"only {len(pool)} videos are available"
        )

    picks = rng_stream(seed).choice(len(pool), size=len(groundtruth), replace=False)
    distractors = [pool[index] for index in sorted(picks)]

    return CandidateSet(
        user_id=user_id,
        candidates=(*sorted(groundtruth), *distractors),
        seed=seed,
    )
