from typing import Sequence

from .types import ComparisonRow, Improvement

LOWER_IS_BETTER = {"mae": True, "rmse": True, "precision": False, "recall": False, "f_score": False}


def relative_improvement(reference: float, other: float, lower_is_better: bool) -> float:
    """Fractional gain of `reference` over `other`; positive means `reference` wins."""
    if other == 0:
        return 0.0

    if lower_is_better:
        return (other - reference) / other

    return (reference - other) / other


def improvements(rows: Sequence[ComparisonRow], reference: str = "dca") -> list[Improvement]:
    by_key = {(row.model, row.direction): row for row in rows}
    result = []

    for row in rows:
        if row.model == reference or (reference, row.direction) not in by_key:
            continue

        ours = by_key[(reference, row.direction)]
        for metric, lower in LOWER_IS_BETTER.items():
            mine, theirs = getattr(ours, metric), getattr(row, metric)
            if mine is None or theirs is None:
                continue

            result.append(
                Improvement(
                    over=row.model,
                    direction=row.direction,
                    metric=metric,
                    value=relative_improvement(mine, theirs, lower),
                )
            )

    return result
