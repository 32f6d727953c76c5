import csv
import json
from pathlib import Path

import pytest

from xassoc.metrics import (
    ComparisonReport,
    ComparisonRow,
    RecReport,
    flat_rows,
    improvements,
    mae_rmse,
    relative_improvement,
    write_report,
)
from xassoc.metrics.types import PRPoint


class TestWriteReport:
    def test_json_and_csv(self, tmp_path: Path):
        report = mae_rmse([[0.4, 0.6]], [[0.2, 0.8]])

        path = write_report(report, tmp_path / "out" / "assoc.json", tmp_path / "out" / "assoc.csv")

        assert json.loads(path.read_text())["report"] == "assoc"

        with (tmp_path / "out" / "assoc.csv").open() as handle:
            rows = list(csv.reader(handle))

        assert rows[0] == ["metric", "name", "value"]
        metrics = {(metric, name) for metric, name, _ in rows[1:]}
        assert ("mae", "") in metrics
        assert ("median_rmse", "residuals") in metrics
        assert all(metric != "format_version" for metric, _, _ in rows[1:])

    def test_identical_reports_identical_bytes(self, tmp_path: Path):
        report = RecReport(k=2, precision=0.5, recall=0.25, f_score=1 / 3, n_users=4, seed=1)

        first = write_report(report, tmp_path / "a.json").read_bytes()
        second = write_report(report, tmp_path / "b.json").read_bytes()

        assert first == second

    def test_flat_rows_label_lists(self):
        report = RecReport(
            k=1,
            precision=1.0,
            recall=0.5,
            f_score=2 / 3,
            n_users=1,
            curve=[PRPoint(k=1, precision=1.0, recall=0.5, f_score=2 / 3)],
        )

        rows = list(flat_rows(report.model_dump()))

        assert ("precision", "curve.@1", 1.0) in rows
        assert ("precision", "", 1.0) in rows


def row(model: str, mae: float, precision=None, direction: str = "t2y") -> ComparisonRow:
    return ComparisonRow(model=model, direction=direction, mae=mae, rmse=mae * 1.5, precision=precision)


class TestImprovement:
    def test_lower_is_better(self):
        assert relative_improvement(0.08, 0.10, lower_is_better=True) == pytest.approx(0.2)

    def test_higher_is_better(self):
        assert relative_improvement(0.6, 0.5, lower_is_better=False) == pytest.approx(0.2)

    def test_zero_baseline(self):
        assert relative_improvement(0.1, 0.0, lower_is_better=True) == 0.0

    def test_against_every_other_model(self):
        rows = [row("dca", 0.08, precision=0.6), row("lr", 0.10, precision=0.5), row("mlp", 0.16)]

        result = {(imp.over, imp.metric): imp.value for imp in improvements(rows)}

        assert result[("lr", "mae")] == pytest.approx(0.2)
        assert result[("lr", "precision")] == pytest.approx(0.2)
        assert result[("mlp", "rmse")] == pytest.approx(0.5)
        assert ("mlp", "precision") not in result
        assert all(over != "dca" for over, _ in result)

    def test_directions_kept_apart(self):
        rows = [row("dca", 0.08), row("lr", 0.10, direction="y2t")]

        assert improvements(rows) == []

    def test_comparison_lookup(self):
        report = ComparisonReport(k=10, seeds=[0], rows=[row("dca", 0.08), row("lr", 0.1)])

        assert report.get("lr", "t2y").mae == 0.1
        with pytest.raises(KeyError):
            report.get("la", "t2y")
