import logging
import time
from argparse import Namespace
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import ValidationError

from xassoc.exceptions import DataLoadError, InvalidConfig
from xassoc.metrics import (
    ComparisonReport,
    ComparisonRow,
    PRPoint,
    improvements,
    mae_rmse,
    measurement_table,
    rec_report,
    write_report,
)
from xassoc.models import (
    MODEL_KINDS,
    ModelSpec,
    default_model_spec,
    fit_model,
    load_checkpoint,
    read_checkpoint,
    save_checkpoint,
)
from xassoc.numerics import derive_seed
from xassoc.recommend import recommend_users, write_recommendations
from xassoc.representations import (
    SyntheticConfig,
    gen_synthetic,
    load_dataset_dir,
    load_synthetic_config,
    save_dataset,
)
from xassoc.types import DIRECTIONS, target_platform

from .config import PipelineSettings, RunConfig, write_manifest
from .pipeline import (
    evaluate_association,
    predict_users,
    prepare,
    read_predictions,
    write_predictions,
)
from .tuning import tune

logger = logging.getLogger(__name__)


def _run_config(**fields) -> RunConfig:
    try:
        return RunConfig(**fields)
    except ValidationError as exc:
        raise InvalidConfig(str(exc))


def _finish(config: RunConfig, started: float, *artifacts: Path) -> int:
    for path in artifacts:
        if not path.exists() or (path.is_file() and path.stat().st_size == 0):
            raise InvalidConfig(f"{path} was not written")

    write_manifest(config, started, list(artifacts))
    return 0


def model_spec_from_args(args: Namespace) -> ModelSpec:
    """Per-direction defaults for the kind, overridden by any flag given."""
    spec = default_model_spec(args.model, args.direction)
    updates, train = {}, {"seed": args.seed}

    if args.epochs is not None:
        train["epochs"] = args.epochs

    if args.mt is not None:
        updates["m_T"] = args.mt
    if args.mc is not None:
        updates["m_C"] = args.mc
    if args.my is not None:
        updates["m_Y"] = args.my

    if args.hidden is not None:
        updates["hidden"] = args.hidden
    if args.atoms is not None:
        updates["atoms"] = args.atoms

    if args.lam is not None:
        if args.model == "lr":
            updates["ridge_lambda"] = args.lam
        elif args.model == "la":
            updates["la_lambda"] = args.lam
        else:
            train["weight_decay"] = args.lam

    if args.mu is not None:
        train["sparsity"] = args.mu

    try:
        return ModelSpec.model_validate(
            {
                **spec.model_dump(),
                **updates,
                "train": {**spec.train.model_dump(), **train},
            }
        )
    except ValidationError as exc:
        raise InvalidConfig(str(exc))


def pipeline_settings(args: Namespace) -> PipelineSettings:
    return PipelineSettings(seed=args.seed)


def cmd_gen(args: Namespace) -> int:
    started = time.perf_counter()

    cfg = load_synthetic_config(args.config) if args.config else SyntheticConfig()
    overrides = {
        key: value
        for key, value in (
            ("seed", args.seed),
            ("n_users", args.users),
            ("disparity", args.disparity),
        )
        if value is not None
    }
    if overrides:
        try:
            cfg = SyntheticConfig.model_validate({**cfg.model_dump(), **overrides})
        except ValidationError as exc:
            raise InvalidConfig(str(exc))

    config = _run_config(
        command="gen",
        inputs={"config": args.config} if args.config else {},
        outputs={"out": args.out},
        seed=cfg.seed,
        extra={"synthetic": cfg.model_dump()},
    )

    out = save_dataset(gen_synthetic(cfg), args.out)
    load_dataset_dir(out)

    return _finish(config, started, out)


def cmd_train(args: Namespace) -> int:
    started = time.perf_counter()

    spec = model_spec_from_args(args)
    settings = pipeline_settings(args)
    config = _run_config(
        command="train",
        inputs={"data": args.data},
        outputs={"out": args.out},
        model=spec.kind,
        direction=spec.direction,
        spec=spec,
        seed=args.seed,
        pipeline=settings,
    )

    prepared = prepare(args.data, settings)
    model = fit_model(spec, prepared.train.users)

    out = save_checkpoint(
        model,
        args.out,
        pipeline={**settings.model_dump(), "direction": spec.direction},
    )
    load_checkpoint(out)

    return _finish(config, started, out)


def _checkpoint_settings(path: str) -> tuple[PipelineSettings, dict]:
    document = read_checkpoint(path)
    pipeline = dict(document.pipeline)

    try:
        settings = PipelineSettings.model_validate(
            {key: pipeline[key] for key in PipelineSettings.model_fields if key in pipeline}
        )
    except ValidationError as exc:
        raise InvalidConfig(f"{path}: bad pipeline settings: {exc}")

    return settings, pipeline


def cmd_predict(args: Namespace) -> int:
    started = time.perf_counter()

    settings, pipeline = _checkpoint_settings(args.model)
    direction = args.direction or pipeline.get("direction", "t2y")

    config = _run_config(
        command="predict",
        inputs={"model": args.model, "data": args.data},
        outputs={"out": args.out},
        direction=direction,
        substitute=args.substitute,
        seed=settings.seed,
        pipeline=settings,
    )

    model = load_checkpoint(args.model)
    prepared = prepare(args.data, settings)
    users = prepared.dataset.users if args.split == "all" else prepared.test.users

    preds = predict_users(model, users, direction, args.substitute)
    out = write_predictions(preds, direction, args.out)
    logger.info("Wrote %d %s predictions to %s", len(preds), direction, out)

    return _finish(config, started, out)


def cmd_eval_assoc(args: Namespace) -> int:
    started = time.perf_counter()
    config = _run_config(
        command="eval-assoc",
        inputs={"preds": args.preds, "data": args.data},
        outputs={"out": args.out},
    )

    users = {user.user_id: user for user in load_dataset_dir(args.data).users}
    preds, truths, direction = [], [], None
    seen: set[str] = set()

    for number, line in read_predictions(args.preds):
        if direction is None:
            direction = line.direction
        elif line.direction != direction:
            raise DataLoadError(
                f"direction {line.direction} differs from {direction}",
                path=args.preds,
                line=number,
            )

        if line.user not in users:
            raise DataLoadError(f"unknown user {line.user!r}", path=args.preds, line=number)

        if line.user in seen:
            raise DataLoadError(
                f"duplicate prediction for user {line.user!r}", path=args.preds, line=number
            )
        seen.add(line.user)

        preds.append(line.pred)
        truths.append(users[line.user].on(target_platform(line.direction)))

    if direction is None:
        raise DataLoadError("no predictions", path=args.preds)

    report = mae_rmse(preds, truths, platform=target_platform(direction))
    logger.info("MAE=%.6f RMSE=%.6f over %d users", report.mae, report.rmse, report.n_users)

    out = write_report(report, args.out, csv_path=args.csv)

    return _finish(config, started, out)


def cmd_eval_rec(args: Namespace) -> int:
    started = time.perf_counter()

    settings, _ = _checkpoint_settings(args.model)
    seed = args.seed if args.seed is not None else settings.seed

    config = _run_config(
        command="eval-rec",
        inputs={"model": args.model, "data": args.data},
        outputs={"out": args.out},
        direction="t2y",
        substitute=args.substitute,
        k=args.k,
        seed=seed,
        pipeline=settings,
    )

    model = load_checkpoint(args.model)
    prepared = prepare(args.data, settings)

    preds = predict_users(model, prepared.test.users, "t2y", args.substitute)
    recommendations = recommend_users(
        preds,
        prepared.dataset.interactions,
        prepared.dataset.videos,
        args.k,
        derive_seed(seed, "candidates"),
    )

    report = rec_report(recommendations, prepared.dataset.interactions, args.k, seed=seed)
    artifacts = [write_report(report, args.out, csv_path=args.csv)]

    if args.recs:
        artifacts.append(write_recommendations(recommendations, args.recs))

    return _finish(config, started, *artifacts)


def cmd_measure(args: Namespace) -> int:
    started = time.perf_counter()
    config = _run_config(
        command="measure",
        inputs={"data": args.data},
        outputs={"out": args.out},
        seed=args.seed,
        extra={"clusters": args.clusters, "random_samples": args.random_samples},
    )

    table = measurement_table(
        load_dataset_dir(args.data),
        clusters=args.clusters,
        n_random=args.random_samples,
        seed=args.seed,
    )
    out = write_report(table, args.out, csv_path=args.csv)

    return _finish(config, started, out)


def _mean(values: list[Optional[float]]) -> Optional[float]:
    if any(value is None for value in values):
        return None

    return float(np.mean(values))


def baselines_compare(
    data: str | Path,
    seeds: list[int],
    k: int = 10,
    models=MODEL_KINDS,
    directions=DIRECTIONS,
    epochs: Optional[int] = None,
) -> ComparisonReport:
    """Train every model for every direction on each seed's split and average the metrics."""
    rows: dict[tuple[str, str], list[ComparisonRow]] = {}
    curves: dict[str, list[list[PRPoint]]] = {}

    for seed in seeds:
        prepared = prepare(data, PipelineSettings(seed=seed))

        for direction in directions:
            for kind in models:
                spec = default_model_spec(kind, direction)
                train = {"seed": seed} | ({"epochs": epochs} if epochs else {})
                spec = spec.model_copy(update={"train": spec.train.model_copy(update=train)})

                model = fit_model(spec, prepared.train.users)
                assoc = evaluate_association(model, prepared.test.users, direction)
                row = ComparisonRow(
                    model=kind, direction=direction, mae=assoc.mae, rmse=assoc.rmse
                )

                if direction == "t2y":
                    recommendations = recommend_users(
                        predict_users(model, prepared.test.users, direction),
                        prepared.dataset.interactions,
                        prepared.dataset.videos,
                        k,
                        derive_seed(seed, "candidates"),
                    )
                    rec = rec_report(recommendations, prepared.dataset.interactions, k)
                    row = row.model_copy(
                        update={
                            "precision": rec.precision,
                            "recall": rec.recall,
                            "f_score": rec.f_score,
                        }
                    )
                    curves.setdefault(kind, []).append(rec.curve)

                rows.setdefault((kind, direction), []).append(row)
                logger.info(
                    "seed %d %s %s: MAE=%.6f RMSE=%.6f", seed, kind, direction, row.mae, row.rmse
                )

    averaged = [
        ComparisonRow(
            model=kind,
            direction=direction,
            **{
                metric: _mean([getattr(run, metric) for run in runs])
                for metric in ("mae", "rmse", "precision", "recall", "f_score")
            },
        )
        for (kind, direction), runs in rows.items()
    ]

    return ComparisonReport(
        k=k,
        seeds=list(seeds),
        rows=averaged,
        improvement=improvements(averaged),
        curves={
            kind: [
                PRPoint(
                    k=points[0].k,
                    precision=float(np.mean([p.precision for p in points])),
                    recall=float(np.mean([p.recall for p in points])),
                    f_score=float(np.mean([p.f_score for p in points])),
                )
                for points in zip(*runs)
            ]
            for kind, runs in curves.items()
        },
    )


def cmd_baselines_compare(args: Namespace) -> int:
    started = time.perf_counter()
    seeds = [args.seed + offset for offset in range(args.repeats)]

    config = _run_config(
        command="baselines-compare",
        inputs={"data": args.data},
        outputs={"out": args.out},
        k=args.k,
        seed=args.seed,
        extra={"seeds": seeds, "models": args.models, "directions": args.directions},
    )

    report = baselines_compare(
        args.data,
        seeds,
        k=args.k,
        models=args.models,
        directions=args.directions,
        epochs=args.epochs,
    )
    out = write_report(report, args.out, csv_path=args.csv)

    return _finish(config, started, out)


def cmd_tune(args: Namespace) -> int:
    started = time.perf_counter()

    spec = model_spec_from_args(args)
    settings = pipeline_settings(args)
    config = _run_config(
        command="tune",
        inputs={"data": args.data},
        outputs={"out": args.out},
        model=spec.kind,
        direction=spec.direction,
        spec=spec,
        seed=args.seed,
        pipeline=settings,
        extra={"validation_fraction": args.validation_fraction},
    )

    prepared = prepare(args.data, settings)
    report = tune(
        prepared.train, spec, seed=args.seed, validation_fraction=args.validation_fraction
    )
    logger.info("Best %s (%s): %s with MAE %.6f", spec.kind, spec.direction, report.best, report.best_mae)

    out = write_report(report, args.out, csv_path=args.csv)

    return _finish(config, started, out)
