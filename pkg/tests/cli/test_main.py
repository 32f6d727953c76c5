import json
from pathlib import Path

import pytest
from dirty_equals import IsFloat, IsInstance, IsList, IsPartialDict, IsStr

from xassoc.cli.config import manifest_path
from xassoc.cli.main import build_parser, run
from tests.utils import capture_logs


class TestParser:
    def test_unknown_subcommand(self):
        assert run(["frobnicate"]) == 2

    def test_missing_required_flag(self):
        assert run(["train", "--model", "dca"]) == 2

    def test_bad_model_kind(self, tmp_path: Path):
        assert run(["train", "--model", "svm", "--data", str(tmp_path), "--out", "x"]) == 2

    def test_model_lists(self):
        args = build_parser().parse_args(
            ["baselines-compare", "--data", "d", "--out", "o", "--models", "lr,dca"]
        )

        assert args.models == ["lr", "dca"]
        assert args.directions == ["t2y", "y2t"]

    def test_help_exits_cleanly(self):
        assert run(["--help"]) == 0


class TestGen:
    def test_writes_dataset_and_manifest(self, generated: Path):
        assert {path.name for path in generated.iterdir()} >= {
            "users.jsonl",
            "videos.jsonl",
            "interactions.jsonl",
            "manifest.json",
        }

        manifest = json.loads(manifest_path(generated).read_text())
        assert manifest == {
            "format_version": 1,
            "command": "gen",
            "config": IsInstance(dict),
            "seed": 0,
            "rng": "philox4x64",
            "versions": {"xassoc": IsStr, "numpy": IsStr, "python": IsStr},
            "wall_time_seconds": IsFloat,
            "artifacts": IsList(length=1),
        }

    def test_flag_overrides(self, tmp_path: Path, config_file: Path):
        out = tmp_path / "other"

        assert run(
            ["gen", "--config", str(config_file), "--out", str(out), "--users", "50", "--seed", "3", "-q"]
        ) == 0

        lines = (out / "users.jsonl").read_text().splitlines()
        assert len(lines) == 50

    def test_missing_config(self, tmp_path: Path):
        with capture_logs("xassoc") as records:
            assert run(["gen", "--config", str(tmp_path / "nope.toml"), "--out", str(tmp_path / "o")]) == 1

        assert any("nope.toml" in record.getMessage() for record in records)


class TestPipeline:
    def test_end_to_end(self, tmp_path: Path, generated: Path, checkpoint: Path):
        preds = tmp_path / "preds.jsonl"
        assoc = tmp_path / "assoc.json"
        rec = tmp_path / "rec.json"
        recs = tmp_path / "recs.jsonl"
        measure = tmp_path / "measure.json"

        assert run(["predict", "--model", str(checkpoint), "--data", str(generated), "--out", str(preds), "-q"]) == 0
        assert run(
            ["eval-assoc", "--preds", str(preds), "--data", str(generated), "--out", str(assoc), "--csv", str(tmp_path / "assoc.csv"), "-q"]
        ) == 0
        assert run(
            ["eval-rec", "--model", str(checkpoint), "--data", str(generated), "--k", "10", "--out", str(rec), "--recs", str(recs), "-q"]
        ) == 0
        assert run(
            ["measure", "--data", str(generated), "--clusters", "3", "--random-samples", "10", "--out", str(measure), "-q"]
        ) == 0

        first = json.loads(preds.read_text().splitlines()[0])
        assert first["direction"] == "t2y"
        assert len(first["pred"]) == 10

        assoc_report = json.loads(assoc.read_text())
        assert assoc_report["rmse"] >= assoc_report["mae"]
        assert assoc_report["platform"] == "Y"

        rec_report = json.loads(rec.read_text())
        assert rec_report == IsPartialDict(precision=IsFloat, recall=IsFloat, f_score=IsFloat)
        assert rec_report["k"] == 10
        assert len(rec_report["curve"]) == 10
        assert len(recs.read_text().splitlines()) == rec_report["n_users"]

        measure_report = json.loads(measure.read_text())
        assert len(measure_report["rows"]) == 6

        for artifact in (checkpoint, preds, assoc, rec, measure):
            assert manifest_path(artifact).exists()

    def test_training_is_reproducible(self, tmp_path: Path, generated: Path, checkpoint: Path):
        again = tmp_path / "again.json"

        assert run(
            ["train", "--model", "dca", "--data", str(generated), "--out", str(again), "--epochs", "2", "-q"]
        ) == 0

        assert again.read_bytes() == checkpoint.read_bytes()

    def test_checkpoint_carries_pipeline(self, checkpoint: Path):
        pipeline = json.loads(checkpoint.read_text())["pipeline"]

        assert pipeline == {
            "min_user_interactions": 3,
            "min_video_consumers": 3,
            "train_fraction": 0.8,
            "seed": 0,
            "direction": "t2y",
        }

    @pytest.mark.parametrize("model", ["lr", "la", "mlp", "ma"])
    def test_baseline_kinds_train(self, tmp_path: Path, generated: Path, model: str):
        out = tmp_path / f"{model}.json"
        args = ["train", "--model", model, "--data", str(generated), "--out", str(out), "--epochs", "2", "-q"]
        if model == "la":
            args += ["--atoms", "5"]

        assert run(args) == 0
        assert json.loads(out.read_text())["kind"] == model


class TestErrors:
    def test_bad_prediction_line(self, tmp_path: Path, generated: Path):
        known = json.loads((generated / "users.jsonl").read_text().splitlines()[0])["id"]
        preds = tmp_path / "preds.jsonl"
        preds.write_text(json.dumps({"user": known, "direction": "t2y", "pred": [0.1]}) + "\nnot json\n")

        with capture_logs("xassoc") as records:
            code = run(["eval-assoc", "--preds", str(preds), "--data", str(generated), "--out", str(tmp_path / "r.json")])

        assert code == 1
        assert any(f"{preds}:2:" in record.getMessage() for record in records)

    def test_unknown_user(self, tmp_path: Path, generated: Path):
        preds = tmp_path / "preds.jsonl"
        preds.write_text('{"user": "nobody", "direction": "t2y", "pred": [0.1]}\n')

        with capture_logs("xassoc") as records:
            code = run(["eval-assoc", "--preds", str(preds), "--data", str(generated), "--out", str(tmp_path / "r.json")])

        assert code == 1
        assert any("nobody" in record.getMessage() for record in records)

    def test_duplicate_prediction_user(self, tmp_path: Path, generated: Path):
        known = json.loads((generated / "users.jsonl").read_text().splitlines()[0])["id"]
        row = json.dumps({"user": known, "direction": "t2y", "pred": [0.1] * 10})
        preds = tmp_path / "preds.jsonl"
        preds.write_text(f"{row}\n{row}\n")

        with capture_logs("xassoc") as records:
            code = run(["eval-assoc", "--preds", str(preds), "--data", str(generated), "--out", str(tmp_path / "r.json")])

        assert code == 1
        assert any(
            f"{preds}:2:" in record.getMessage() and "duplicate" in record.getMessage()
            for record in records
        )
        assert not (tmp_path / "r.json").exists()

    def test_missing_data_dir(self, tmp_path: Path):
        with capture_logs("xassoc") as records:
            code = run(["measure", "--data", str(tmp_path / "absent"), "--out", str(tmp_path / "m.json")])

        assert code == 1
        assert any("absent" in record.getMessage() for record in records)

    def test_bad_checkpoint(self, tmp_path: Path, generated: Path):
        model = tmp_path / "model.json"
        model.write_text("{}")

        code = run(["predict", "--model", str(model), "--data", str(generated), "--out", str(tmp_path / "p.jsonl"), "-q"])

        assert code == 1


class TestCompareAndTune:
    def test_baselines_compare(self, tmp_path: Path, generated: Path):
        out = tmp_path / "compare.json"

        assert run(
            [
                "baselines-compare", "--data", str(generated), "--out", str(out),
                "--models", "lr,dca", "--directions", "t2y", "--epochs", "2", "--k", "5", "-q",
            ]
        ) == 0

        report = json.loads(out.read_text())
        assert [(row["model"], row["direction"]) for row in report["rows"]] == [
            ("lr", "t2y"),
            ("dca", "t2y"),
        ]
        assert {item["over"] for item in report["improvement"]} == {"lr"}
        assert set(report["curves"]) == {"lr", "dca"}
        assert report["seeds"] == [0]

    def test_tune_ridge(self, tmp_path: Path, generated: Path):
        out = tmp_path / "tune.json"

        assert run(["tune", "--model", "lr", "--data", str(generated), "--out", str(out), "-q"]) == 0

        report = json.loads(out.read_text())
        assert report["model"] == "lr"
        assert report["best"]["ridge_lambda"] in [trial["params"]["ridge_lambda"] for trial in report["trials"]]
        assert report["best_mae"] == min(trial["mae"] for trial in report["trials"])
