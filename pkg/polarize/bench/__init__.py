"""
实验模块
(α, m) 网格上的难度-极化度实验：运行、汇总、CSV 与 SVG 输出
"""

from .report import (
    CSV_HEADER,
    CellSummary,
    QualityRow,
    Spread,
    emit_csv,
    emit_plot,
    format_csv,
    format_quality_table,
    load_csv,
    lower_median,
    min_median_max,
    quality_table,
    summarize,
)
from .runner import BenchBudget, ExperimentRecord, GridSpec, ls_ratio, run_matrix, run_matrix_sync

__all__ = [
    "BenchBudget",
    "CSV_HEADER",
    "CellSummary",
    "ExperimentRecord",
    "GridSpec",
    "QualityRow",
    "Spread",
    "emit_csv",
    "emit_plot",
    "format_csv",
    "format_quality_table",
    "load_csv",
    "lower_median",
    "ls_ratio",
    "min_median_max",
    "quality_table",
    "run_matrix",
    "run_matrix_sync",
    "summarize",
]
