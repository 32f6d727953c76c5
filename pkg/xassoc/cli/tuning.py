"""Grid and line searches over model hyper-parameters, scored by validation MAE."""
import itertools
import logging
from typing import Any, Iterable, Literal

from pydantic import BaseModel

from xassoc.exceptions import InvalidConfig
from xassoc.metrics.types import REPORT_FORMAT_VERSION
from xassoc.models import ModelKind, ModelSpec, fit_model
from xassoc.numerics import derive_seed
from xassoc.representations import Dataset, split_train_test
from xassoc.types import Direction

from .pipeline import evaluate_association

logger = logging.getLogger(__name__)

TRAIN_KEYS = {"weight_decay", "sparsity", "epochs"}

LR_LAMBDAS = [1.0, 10.0, 50.0, 100.0, 150.0, 200.0, 400.0, 800.0, 1600.0]
LA_LAMBDAS = [0.02, 0.05, 0.1, 0.2]
LA_ATOMS = [20, 40, 80, 120]
MLP_HIDDEN = [60, 80, 100, 120, 150]
MLP_DECAY = [0.0, 0.01]
MA_LAMBDAS = [0.001, 0.005, 0.01]
MA_MUS = [0.0, 0.0001, 0.001]
MA_HIDDEN = [60, 90, 100, 120]
DCA_SPLITS = [0, 5, 10, 15, 20]


class TuneTrial(BaseModel):
    stage: str
    params: dict[str, Any]
    mae: float
    rmse: float


class TuneReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["tune"] = "tune"

    model: ModelKind
    direction: Direction
    seed: int
    validation_users: int
    trials: list[TuneTrial]
    best: dict[str, Any]
    best_mae: float
    spec: ModelSpec


def apply_overrides(spec: ModelSpec, overrides: dict[str, Any]) -> ModelSpec:
    train = {key: value for key, value in overrides.items() if key in TRAIN_KEYS}
    model = {key: value for key, value in overrides.items() if key not in TRAIN_KEYS}

    return spec.model_copy(
        update={**model, "train": spec.train.model_copy(update=train)}
    )


def search_space(kind: ModelKind) -> list[dict[str, Any]]:
    if kind == "lr":
        return [{"ridge_lambda": value} for value in LR_LAMBDAS]

    if kind == "la":
        return [
            {"la_lambda": lam, "atoms": atoms}
            for lam, atoms in itertools.product(LA_LAMBDAS, LA_ATOMS)
        ]

    if kind == "mlp":
        return [
            {"hidden": hidden, "weight_decay": decay}
            for hidden, decay in itertools.product(MLP_HIDDEN, MLP_DECAY)
        ]

    if kind == "ma":
        return [
            {"weight_decay": lam, "sparsity": mu, "m_T": 0, "m_C": m, "m_Y": 0}
            for lam, mu, m in itertools.product(MA_LAMBDAS, MA_MUS, MA_HIDDEN)
        ]

    raise InvalidConfig(f"no direct search space for {kind!r}")


def split_candidates(total: int) -> list[dict[str, Any]]:
    """Symmetric [m^T, m^C, m^Y] splits of a fixed hidden size."""
    return [
        {"m_T": side, "m_C": total - 2 * side, "m_Y": side}
        for side in DCA_SPLITS
        if total - 2 * side >= 1
    ]


class _Search:
    def __init__(self, spec: ModelSpec, fit_users: Dataset, validation: Dataset):
        self.spec = spec
        self.fit_users = fit_users
        self.validation = validation
        self.trials: list[TuneTrial] = []

    def run(self, stage: str, candidates: Iterable[dict[str, Any]]) -> TuneTrial:
        best = None

        for overrides in candidates:
            spec = apply_overrides(self.spec, overrides)
            model = fit_model(spec, self.fit_users.users)
            report = evaluate_association(model, self.validation.users, spec.direction)

            trial = TuneTrial(stage=stage, params=overrides, mae=report.mae, rmse=report.rmse)
            self.trials.append(trial)
            logger.info("%s %s: validation MAE %.6f", stage, overrides, trial.mae)

            if best is None or trial.mae < best.mae:
                best = trial

        if best is None:
            raise InvalidConfig(f"{stage}: empty search space")

        return best


def tune(
    train: Dataset,
    spec: ModelSpec,
    seed: int = 0,
    validation_fraction: float = 0.2,
) -> TuneReport:
    """Select hyper-parameters for `spec.kind` on a validation split carved from `train`.

    DCA reuses the MA grid to fix λ, μ and the total hidden size, then line-searches
    how that size is split between the platform-specific and common blocks.
    """
    fit_users, validation = split_train_test(
        train, 1.0 - validation_fraction, seed=derive_seed(seed, "validation")
    )

    if spec.kind == "dca":
        search = _Search(spec.model_copy(update={"kind": "ma"}), fit_users, validation)
        ma_best = search.run("ma-grid", search_space("ma"))

        search.spec = apply_overrides(
            spec,
            {key: ma_best.params[key] for key in ("weight_decay", "sparsity")},
        )
        best = search.run("dca-split", split_candidates(ma_best.params["m_C"]))
    else:
        search = _Search(spec, fit_users, validation)
        best = search.run(f"{spec.kind}-grid", search_space(spec.kind))

    return TuneReport(
        model=spec.kind,
        direction=spec.direction,
        seed=seed,
        validation_users=len(validation.users),
        trials=search.trials,
        best=best.params,
        best_mae=best.mae,
        spec=apply_overrides(search.spec, best.params),
    )
