import logging
from typing import Iterable, Optional, Sequence

import numpy as np

from xassoc.exceptions import EmptyInput
from xassoc.recommend import RankedList, Recommendation
from xassoc.representations import InteractionSet

from .types import PRPoint, RecReport

logger = logging.getLogger(__name__)


def topk_prf(
    ranked: RankedList | Sequence[str], groundtruth: Iterable[str], k: int
) -> tuple[float, float, float]:
    if k < 1:
        raise ValueError("k must be at least 1")

    groundtruth = set(groundtruth)
    if not groundtruth:
        raise EmptyInput("groundtruth set is empty")

    video_ids = ranked.video_ids() if isinstance(ranked, RankedList) else list(ranked)
    hits = len(set(video_ids[:k]) & groundtruth)

    precision = hits / k
    recall = hits / len(groundtruth)
    if hits == 0:
        return 0.0, 0.0, 0.0

    return precision, recall, 2 * precision * recall / (precision + recall)


def _mean_prf(
    recommendations: Sequence[Recommendation], interactions: InteractionSet, k: int
) -> PRPoint:
    scores = np.array(
        [
            topk_prf(rec.ranked, interactions.videos_of(rec.user_id), k)
            for rec in recommendations
        ]
    )
    precision, recall, f_score = scores.mean(axis=0)

    return PRPoint(
        k=k, precision=float(precision), recall=float(recall), f_score=float(f_score)
    )


def precision_recall_curve(
    recommendations: Sequence[Recommendation], interactions: InteractionSet, max_k: int
) -> list[PRPoint]:
    """Mean P/R/F for k = 1..max_k, reading prefixes of each ranked list."""
    if not recommendations:
        raise EmptyInput("no recommendations to score")

    return [_mean_prf(recommendations, interactions, k) for k in range(1, max_k + 1)]


def rec_report(
    recommendations: Sequence[Recommendation],
    interactions: InteractionSet,
    k: int,
    seed: Optional[int] = None,
    curve: bool = True,
) -> RecReport:
    if not recommendations:
        raise EmptyInput("no recommendations to score")

    point = _mean_prf(recommendations, interactions, k)
    logger.info(
        "P@%d=%.4f R@%d=%.4f F@%d=%.4f over %d users",
        k, point.precision, k, point.recall, k, point.f_score, len(recommendations),
    )

    return RecReport(
        k=k,
        precision=point.precision,
        recall=point.recall,
        f_score=point.f_score,
        n_users=len(recommendations),
        seed=seed,
        curve=precision_recall_curve(recommendations, interactions, k) if curve else [],
    )
