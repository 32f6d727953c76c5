"""Do users grouped on one platform stay close together on another?

Groups come from k-means on the origin platform. For each group we take the
average Euclidean distance of members to the group centroid, measured in
whichever platform's space we are inspecting, and normalise it by the same
statistic over uniformly random groups of the same size. A ratio near 1 means
the grouping carries no structure on that platform.
"""
import logging
from typing import Optional, Sequence

import numpy as np

from xassoc.exceptions import EmptyInput, ShapeMismatch
from xassoc.numerics import Matrix, as_matrix, derive_seed, rng_stream
from xassoc.representations import Dataset
from xassoc.types import PLATFORMS

from .clustering import kmeans
from .types import ConcentrationReport, GroupConcentration, MeasurementRow, MeasurementTable

logger = logging.getLogger(__name__)


def mean_distance_to_centroid(points: Matrix) -> float:
    centroid = points.mean(axis=0)
    return float(np.linalg.norm(points - centroid, axis=1).mean())


def random_baseline(reps: Matrix, size: int, n_random: int, seed: int) -> float:
    rng = rng_stream(seed)
    n = reps.shape[0]

    return float(
        np.mean(
            [
                mean_distance_to_centroid(reps[rng.choice(n, size=size, replace=False)])
                for _ in range(n_random)
            ]
        )
    )


def concentration_ratio(
    labels: Sequence[int],
    reps,
    n_random: int = 200,
    seed: int = 0,
    n_groups: Optional[int] = None,
) -> ConcentrationReport:
    labels = np.asarray(labels)
    reps = as_matrix(np.asarray(reps, dtype=np.float64), name="reps")

    if labels.shape[0] != reps.shape[0]:
        raise ShapeMismatch(f"{labels.shape[0]} labels for {reps.shape[0]} users")

    if n_random < 1:
        raise ValueError("n_random must be at least 1")

    n_groups = n_groups if n_groups is not None else int(labels.max()) + 1
    groups = []

    for group in range(n_groups):
        members = reps[labels == group]
        if not len(members):
            logger.warning("Group %d is empty, skipping", group)
            continue

        distance = mean_distance_to_centroid(members)
        baseline = random_baseline(
            reps, len(members), n_random, derive_seed(seed, "baseline", str(group))
        )

        groups.append(
            GroupConcentration(
                group=group,
                size=len(members),
                distance=distance,
                baseline=baseline,
                ratio=distance / baseline if baseline > 0 else 0.0,
            )
        )

    if not groups:
        raise EmptyInput("every group is empty")

    return ConcentrationReport(
        n_random=n_random,
        groups=groups,
        mean_distance=float(np.mean([g.distance for g in groups])),
        mean_baseline=float(np.mean([g.baseline for g in groups])),
        mean_ratio=float(np.mean([g.ratio for g in groups])),
    )


def measurement_table(
    dataset: Dataset,
    clusters: int = 10,
    n_random: int = 200,
    seed: int = 0,
    max_iters: int = 100,
) -> MeasurementTable:
    """Cluster on each platform, then measure concentration on both.

    The random row for a platform reports the size-matched baseline distance of
    the groups clustered on that same platform, so its ratio is 1 by definition.
    """
    if not dataset.users:
        raise EmptyInput("no users to measure")

    rows = []
    details = {}

    for origin in PLATFORMS:
        result = kmeans(
            dataset.user_matrix(origin),
            clusters,
            seed=derive_seed(seed, "kmeans", origin),
            max_iters=max_iters,
        )

        for measured in PLATFORMS:
            report = concentration_ratio(
                result.labels,
                dataset.user_matrix(measured),
                n_random=n_random,
                seed=derive_seed(seed, "concentration", origin, measured),
                n_groups=clusters,
            )
            details[f"{origin}->{measured}"] = report
            rows.append(
                MeasurementRow(
                    clustered_on=origin,
                    measured_on=measured,
                    distance=report.mean_distance,
                    ratio=report.mean_ratio,
                )
            )

    for platform in PLATFORMS:
        rows.append(
            MeasurementRow(
                clustered_on="random",
                measured_on=platform,
                distance=details[f"{platform}->{platform}"].mean_baseline,
                ratio=1.0,
            )
        )

    logger.info(
        "Concentration ratios: %s",
        ", ".join(f"{r.clustered_on}->{r.measured_on}={r.ratio:.3f}" for r in rows[:4]),
    )

    return MeasurementTable(
        clusters=clusters,
        n_random=n_random,
        n_users=len(dataset.users),
        seed=seed,
        rows=rows,
        details=details,
    )
