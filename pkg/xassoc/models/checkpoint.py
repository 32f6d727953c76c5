import json
import logging
from pathlib import Path
from typing import Any, Optional

from pydantic import ValidationError

from xassoc.exceptions import CheckpointError

from .base import AssociationModel
from .types import CHECKPOINT_FORMAT_VERSION, CheckpointDocument

logger = logging.getLogger(__name__)


def dumps_checkpoint(model: AssociationModel, pipeline: Optional[dict[str, Any]] = None) -> str:
    document = model.to_checkpoint()
    if pipeline:
        document.pipeline = dict(pipeline)

    # stdlib json writes the shortest round-tripping repr of every float
    return json.dumps(document.model_dump(), separators=(",", ":")) + "\n"


def save_checkpoint(
    model: AssociationModel, path: str | Path, pipeline: Optional[dict[str, Any]] = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_checkpoint(model, pipeline), "utf-8")

    logger.info("Saved %s checkpoint to %s", model.kind, path)

    return path


def read_checkpoint(path: str | Path) -> CheckpointDocument:
    path = Path(path)

    try:
        raw = json.loads(path.read_text("utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"{path}: cannot read checkpoint: {exc}")

    try:
        document = CheckpointDocument.model_validate(raw)
    except ValidationError as exc:
        raise CheckpointError(f"{path}: invalid checkpoint: {exc}")

    if document.format_version != CHECKPOINT_FORMAT_VERSION:
        raise CheckpointError(
            f"{path}: unsupported checkpoint format_version {document.format_version}"
        )

    return document


def model_from_document(document: CheckpointDocument) -> AssociationModel:
    return AssociationModel.for_kind(document.kind).from_checkpoint(document)


def load_checkpoint(path: str | Path) -> AssociationModel:
    return model_from_document(read_checkpoint(path))
