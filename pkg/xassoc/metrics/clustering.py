import logging
from dataclasses import dataclass, field

import numpy as np

from xassoc.exceptions import EmptyInput, InvalidConfig
from xassoc.numerics import Matrix, as_matrix, rng_stream

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centroids: Matrix
    # within-cluster sum of squares after every assignment step
    wcss_trace: list[float] = field(default_factory=list)
    converged: bool = False

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _squared_distances(X: Matrix, centroids: Matrix) -> Matrix:
    return ((X[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


def _init_centroids(X: Matrix, k: int, rng: np.random.Generator) -> Matrix:
    """k-means++ seeding over k distinct sample indices."""
    n = X.shape[0]
    chosen = [int(rng.integers(n))]

    for _ in range(1, k):
        dist_sq = _squared_distances(X, X[chosen]).min(axis=1)
        dist_sq[chosen] = 0.0

        total = dist_sq.sum()
        if total > 0:
            chosen.append(int(rng.choice(n, p=dist_sq / total)))
        else:
            # every remaining point duplicates a centroid
            remaining = np.setdiff1d(np.arange(n), chosen)
            chosen.append(int(rng.choice(remaining)))

    return X[chosen].copy()


def kmeans(reps, k: int, seed: int = 0, max_iters: int = 100) -> KMeansResult:
    """Lloyd's algorithm from seeded k-means++ centroids; rows of `reps` are points."""
    X = as_matrix(np.asarray(reps, dtype=np.float64), name="reps")
    n = X.shape[0]

    if n == 0:
        raise EmptyInput("cannot cluster an empty set")

    if not 1 <= k <= n:
        raise InvalidConfig(f"k={k} must lie in [1, {n}]")

    rng = rng_stream(seed)
    centroids = _init_centroids(X, k, rng)
    labels = np.full(n, -1)
    trace: list[float] = []
    converged = False

    for iteration in range(max_iters):
        dist_sq = _squared_distances(X, centroids)
        new_labels = dist_sq.argmin(axis=1)
        point_cost = dist_sq[np.arange(n), new_labels]
        trace.append(float(point_cost.sum()))

        logger.debug("k-means iteration %d WCSS %.10g", iteration, trace[-1])

        if np.array_equal(new_labels, labels):
            converged = True
            break

        labels = new_labels
        centroids = centroids.copy()

        # farthest points, in order, re-seed any empty clusters
        donors = iter(np.argsort(-point_cost, kind="stable"))
        for j in range(k):
            members = labels == j
            if members.any():
                centroids[j] = X[members].mean(axis=0)
            else:
                centroids[j] = X[next(donors)]

    return KMeansResult(
        labels=labels, centroids=centroids, wcss_trace=trace, converged=converged
    )
