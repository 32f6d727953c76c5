from .association import mae_rmse, per_user_errors
from .clustering import KMeansResult, kmeans
from .comparison import improvements, relative_improvement
from .concentration import concentration_ratio, measurement_table
from .ranking import precision_recall_curve, rec_report, topk_prf
from .reports import dumps_report, flat_rows, write_report
from .types import (
    AssocReport,
    ComparisonReport,
    ComparisonRow,
    ConcentrationReport,
    MeasurementTable,
    PRPoint,
    RecReport,
)
