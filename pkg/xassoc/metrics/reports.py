import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterator, Optional

from pydantic import BaseModel

logger = logging.getLogger(__name__)


def dumps_report(report: BaseModel) -> str:
    return json.dumps(report.model_dump(), indent=2) + "\n"


def flat_rows(value: Any, prefix: str = "") -> Iterator[tuple[str, str, float]]:
    """(metric, name, value) for every numeric leaf; name is the dotted path to it."""
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)):
                yield from flat_rows(item, f"{prefix}.{key}" if prefix else str(key))
            elif isinstance(item, (int, float)) and not isinstance(item, bool):
                yield str(key), prefix, float(item)

    elif isinstance(value, list):
        for index, item in enumerate(value):
            label = _list_label(item, index)
            yield from flat_rows(item, f"{prefix}.{label}" if prefix else label)


def _list_label(item: Any, index: int) -> str:
    if isinstance(item, dict):
        parts = [
            str(item[key])
            for key in ("model", "clustered_on", "measured_on", "direction", "over", "group")
            if key in item
        ]
        if "metric" in item:
            parts.append(str(item["metric"]))
        if "k" in item and not parts:
            parts.append(f"@{item['k']}")
        if parts:
            return ":".join(parts)

    return str(index)


def write_report(
    report: BaseModel, path: str | Path, csv_path: Optional[str | Path] = None
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(report), "utf-8")

    if csv_path is not None:
        csv_path = Path(csv_path)
        csv_path.parent.mkdir(parents=True, exist_ok=True)

        with csv_path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["metric", "name", "value"])
            for metric, name, value in flat_rows(report.model_dump()):
                if metric == "format_version":
                    continue
                writer.writerow([metric, name, repr(value)])

    logger.info("Wrote %s report to %s", getattr(report, "report", "metrics"), path)

    return path
