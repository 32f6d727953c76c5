import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ValidationError

from xassoc.exceptions import DataLoadError, EmptyInput
from xassoc.metrics import AssocReport, mae_rmse
from xassoc.models import AssociationModel
from xassoc.numerics import Vector, derive_seed
from xassoc.representations import (
    AlignedUser,
    Dataset,
    filter_dataset,
    load_dataset_dir,
    split_train_test,
)
from xassoc.types import Direction, SubstituteMode, source_platform, target_platform

from .config import PipelineSettings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Prepared:
    dataset: Dataset
    train: Dataset
    test: Dataset


def prepare(data_dir: str | Path, settings: PipelineSettings) -> Prepared:
    """Load, filter to the ≥3/≥3 core, then split users with a seed derived from settings.seed."""
    dataset = filter_dataset(
        load_dataset_dir(data_dir),
        min_user_interactions=settings.min_user_interactions,
        min_video_consumers=settings.min_video_consumers,
    )

    if len(dataset.users) < 2:
        raise EmptyInput(f"{data_dir}: only {len(dataset.users)} users survive filtering")

    train, test = split_train_test(
        dataset, settings.train_fraction, seed=derive_seed(settings.seed, "split")
    )

    return Prepared(dataset=dataset, train=train, test=test)


def predict_users(
    model: AssociationModel,
    users: Sequence[AlignedUser],
    direction: Direction,
    substitute: SubstituteMode = "mean",
) -> dict[str, Vector]:
    src = source_platform(direction)
    return {
        user.user_id: model.predict(user.on(src), direction, substitute) for user in users
    }


def evaluate_association(
    model: AssociationModel,
    users: Sequence[AlignedUser],
    direction: Direction,
    substitute: SubstituteMode = "mean",
) -> AssocReport:
    preds = predict_users(model, users, direction, substitute)
    dst = target_platform(direction)

    return mae_rmse(
        [preds[user.user_id] for user in users],
        [user.on(dst) for user in users],
        platform=dst,
    )


class PredictionLine(BaseModel):
    user: str
    direction: Direction
    pred: list[float]


def write_predictions(
    preds: dict[str, Vector], direction: Direction, path: str | Path
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    with path.open("w", encoding="utf-8") as handle:
        for user_id in sorted(preds):
            line = PredictionLine(
                user=user_id, direction=direction, pred=np.asarray(preds[user_id]).tolist()
            )
            handle.write(json.dumps(line.model_dump(), separators=(",", ":")) + "\n")

    return path


def read_predictions(path: str | Path) -> Iterator[tuple[int, PredictionLine]]:
    path = Path(path)

    try:
        handle = path.open(encoding="utf-8")
    except OSError as exc:
        raise DataLoadError(f"cannot open predictions: {exc}", path=path)

    with handle:
        for number, raw in enumerate(handle, start=1):
            if not raw.strip():
                continue

            try:
                yield number, PredictionLine.model_validate_json(raw)
            except ValidationError as exc:
                raise DataLoadError(str(exc), path=path, line=number)
