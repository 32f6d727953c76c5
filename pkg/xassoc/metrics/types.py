from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

REPORT_FORMAT_VERSION = 1

MeasureRowKind = Literal["T", "Y", "random"]


class ResidualSummary(BaseModel):
    """Spread of the per-user errors behind an aggregate."""

    min_mae: float
    median_mae: float
    max_mae: float
    min_rmse: float
    median_rmse: float
    max_rmse: float


class AssocReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["assoc"] = "assoc"

    platform: str
    mae: float = Field(ge=0)
    rmse: float = Field(ge=0)
    n_users: int = Field(ge=1)
    dim: int = Field(ge=1)
    residuals: ResidualSummary

    @model_validator(mode="after")
    def check_order(self) -> "AssocReport":
        # per-user quadratic mean >= arithmetic mean; allow float noise
        if self.rmse < self.mae - 1e-12:
            raise ValueError("RMSE cannot be below MAE")
        return self


class PRPoint(BaseModel):
    k: int = Field(ge=1)
    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    f_score: float = Field(ge=0, le=1)


class RecReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["rec"] = "rec"

    k: int = Field(ge=1)
    precision: float = Field(ge=0, le=1)
    recall: float = Field(ge=0, le=1)
    f_score: float = Field(ge=0, le=1)
    n_users: int = Field(ge=1)
    seed: Optional[int] = None
    curve: list[PRPoint] = []


class GroupConcentration(BaseModel):
    group: int
    size: int = Field(ge=1)
    distance: float = Field(ge=0)
    baseline: float = Field(ge=0)
    ratio: float = Field(ge=0)


class ConcentrationReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["concentration"] = "concentration"

    n_random: int
    groups: list[GroupConcentration]
    mean_distance: float
    mean_baseline: float
    mean_ratio: float


class MeasurementRow(BaseModel):
    # platform users were clustered on, or "random" for the size-matched baseline
    clustered_on: MeasureRowKind
    measured_on: str
    distance: float
    ratio: float


class MeasurementTable(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["measurement"] = "measurement"

    clusters: int
    n_random: int
    n_users: int
    seed: int
    rows: list[MeasurementRow]
    details: dict[str, ConcentrationReport] = {}

    def row(self, clustered_on: MeasureRowKind, measured_on: str) -> MeasurementRow:
        for row in self.rows:
            if row.clustered_on == clustered_on and row.measured_on == measured_on:
                return row

        raise KeyError((clustered_on, measured_on))


class ComparisonRow(BaseModel):
    model: str
    direction: str
    mae: float
    rmse: float
    # recommendation is only defined when predicting the video platform
    precision: Optional[float] = None
    recall: Optional[float] = None
    f_score: Optional[float] = None


class Improvement(BaseModel):
    over: str
    direction: str
    metric: str
    value: float


class ComparisonReport(BaseModel):
    format_version: int = REPORT_FORMAT_VERSION
    report: Literal["comparison"] = "comparison"

    k: int
    seeds: list[int]
    rows: list[ComparisonRow]
    improvement: list[Improvement] = []
    curves: dict[str, list[PRPoint]] = {}

    def get(self, model: str, direction: str) -> ComparisonRow:
        for row in self.rows:
            if row.model == model and row.direction == direction:
                return row

        raise KeyError((model, direction))
