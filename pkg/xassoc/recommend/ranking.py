import logging
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from xassoc.exceptions import ShapeMismatch
from xassoc.numerics import Vector, derive_seed
from xassoc.representations import InteractionSet, VideoRecord

from .candidates import sample_candidates
from .types import RankedItemLine, RankedList, Recommendation, RecommendationLine

logger = logging.getLogger(__name__)


def similarity(u_hat: Vector, v: Vector) -> float:
    """Euclidean similarity 1 / (1 + ‖u_hat − v‖₂)."""
    u_hat = np.asarray(u_hat, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)

    if u_hat.shape != v.shape:
        raise ShapeMismatch(f"cannot compare vectors of shape {u_hat.shape} and {v.shape}")

    return float(1.0 / (1.0 + np.linalg.norm(u_hat - v)))


def rank_topk(
    u_hat: Vector, candidates: Sequence[tuple[str, Vector]], k: int
) -> RankedList:
    if k < 1:
        raise ValueError("k must be at least 1")

    scored = [(video_id, similarity(u_hat, vec)) for video_id, vec in candidates]
    scored.sort(key=lambda item: (-item[1], item[0]))

    return RankedList(items=tuple(scored[:k]))


def recommend_users(
    predictions: Mapping[str, Vector],
    interactions: InteractionSet,
    videos: Sequence[VideoRecord],
    k: int,
    master_seed: int,
) -> list[Recommendation]:
    """Sample candidates and rank them for every predicted user.

    Each user's distractors come from a seed derived from (master_seed, user_id),
    so results do not depend on evaluation order.
    """
    index = {video.video_id: video.vec.entries for video in videos}
    recommendations = []

    for user_id in sorted(predictions):
        seed = derive_seed(master_seed, "candidates", user_id)
        candidate_set = sample_candidates(user_id, interactions, index, seed)

        ranked = rank_topk(
            predictions[user_id],
            [(video_id, index[video_id]) for video_id in candidate_set.candidates],
            k,
        )
        recommendations.append(
            Recommendation(user_id=user_id, ranked=ranked, k=k, seed=seed)
        )

    logger.info("Ranked candidates for %d users (k=%d)", len(recommendations), k)

    return recommendations


def write_recommendations(recommendations: Sequence[Recommendation], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", encoding="utf-8") as handle:
        for recommendation in recommendations:
            line = RecommendationLine(
                user=recommendation.user_id,
                ranked=[
                    RankedItemLine(video=video_id, score=score)
                    for video_id, score in recommendation.ranked.items
                ],
                k=recommendation.k,
                seed=recommendation.seed,
            )
            handle.write(line.model_dump_json() + "\n")

    return path
