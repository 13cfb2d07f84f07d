"""
实验结果汇总与输出
CSV 记录、按单元格的 {min, median, max} 汇总、解质量对比表与 SVG 曲线
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import matplotlib
import pandas as pd
from loguru import logger
from matplotlib.figure import Figure

from ..errors import OutputError
from ..model import write_text
from ..solvers import EXACT_SOLVERS
from .runner import ExperimentRecord

PathLike = Union[str, Path]

CSV_COLUMNS = ["alpha", "m", "rep", "seed", "solver", "bippol", "ls_ratio", "time_ms", "search_nodes", "timeout"]
CSV_HEADER = ",".join(CSV_COLUMNS)

# 对数坐标下的下限
MIN_PLOT_TIME_MS = 1e-3
MIN_PLOT_NODES = 1


class Spread(NamedTuple):
    min: float
    median: float
    max: float


@dataclass(frozen=True)
class CellSummary:
    """(α, m, 求解器) 单元格的汇总"""
    alpha: float
    m: int
    solver: str
    count: int
    timeouts: int
    bippol: Spread
    ls_ratio: Optional[Spread]
    time_ms: Spread
    search_nodes: Spread


@dataclass(frozen=True)
class QualityRow:
    """解质量表的一行：精确最优值最小、中位、最大的三个实例及其上的局部搜索比值"""
    m: int
    alpha: float
    bippol: Spread
    ls_ratio: Tuple[Optional[float], Optional[float], Optional[float]]


def lower_median(values: Sequence[float]):
    """中位数；偶数个时取较小的中间元素"""
    if not values:
        raise ValueError("空序列没有中位数")
    ordered = sorted(values)
    return ordered[(len(ordered) - 1) // 2]


def min_median_max(values: Sequence[float]) -> Spread:
    ordered = sorted(values)
    return Spread(ordered[0], lower_median(ordered), ordered[-1])


def records_frame(records: Sequence[ExperimentRecord]) -> pd.DataFrame:
    """记录转为 DataFrame，列顺序与 CSV 一致"""
    rows = [
        {
            "alpha": float(r.alpha),
            "m": int(r.m),
            "rep": int(r.rep),
            "seed": str(int(r.seed)),
            "solver": r.solver,
            "bippol": float(r.bippol),
            "ls_ratio": float(r.ls_ratio) if r.ls_ratio is not None else None,
            "time_ms": float(r.time_ms),
            "search_nodes": int(r.search_nodes),
            "timeout": int(bool(r.timeout)),
        }
        for r in records
    ]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return frame.astype({"ls_ratio": "float64"})


def format_csv(records: Sequence[ExperimentRecord]) -> str:
    if not records:
        return CSV_HEADER + "\n"
    return records_frame(records).to_csv(index=False, lineterminator="\n", na_rep="")


def emit_csv(records: Sequence[ExperimentRecord], path: PathLike) -> None:
    """写出 CSV；'-' 表示标准输出"""
    write_text(path, format_csv(records))
    if str(path) != "-":
        logger.info(f"📝 已写出 {len(records)} 条记录到 {path}")


def load_csv(path: PathLike) -> List[ExperimentRecord]:
    """读回 CSV 记录"""
    try:
        frame = pd.read_csv(path, dtype={"seed": str, "solver": str})
    except (OSError, pd.errors.ParserError) as e:
        raise OutputError(f"无法读取结果文件 {path}: {e}") from None
    records = []
    for row in frame.itertuples(index=False):
        records.append(
            ExperimentRecord(
                alpha=float(row.alpha),
                m=int(row.m),
                rep=int(row.rep),
                seed=int(row.seed),
                solver=str(row.solver),
                bippol=float(row.bippol),
                ls_ratio=None if pd.isna(row.ls_ratio) else float(row.ls_ratio),
                time_ms=float(row.time_ms),
                search_nodes=int(row.search_nodes),
                timeout=bool(int(row.timeout)),
            )
        )
    return records


def summarize(records: Sequence[ExperimentRecord]) -> List[CellSummary]:
    """按 (α, m, 求解器) 分组汇总，组顺序为首次出现的顺序"""
    if not records:
        raise ValueError("没有可汇总的记录")
    frame = records_frame(records)
    summaries = []
    for (alpha, m, solver), group in frame.groupby(["alpha", "m", "solver"], sort=False):
        ratios = [float(x) for x in group["ls_ratio"].dropna()]
        summaries.append(
            CellSummary(
                alpha=float(alpha),
                m=int(m),
                solver=str(solver),
                count=len(group),
                timeouts=int(group["timeout"].sum()),
                bippol=min_median_max([float(x) for x in group["bippol"]]),
                ls_ratio=min_median_max(ratios) if ratios else None,
                time_ms=min_median_max([float(x) for x in group["time_ms"]]),
                search_nodes=min_median_max([int(x) for x in group["search_nodes"]]),
            )
        )
    return summaries


def _exact_solver(solvers: Sequence[str]) -> Optional[str]:
    return next((name for name in solvers if name in EXACT_SOLVERS), None)


def quality_table(records: Sequence[ExperimentRecord]) -> List[QualityRow]:
    """按 (m, α) 取精确最优值最小、中位、最大的实例，并给出这三个实例上的局部搜索比值"""
    exact = _exact_solver(list(dict.fromkeys(r.solver for r in records)))
    if exact is None:
        return []

    ls_by_key: Dict[Tuple[float, int, int], ExperimentRecord] = {
        (r.alpha, r.m, r.rep): r for r in records if r.solver == "ls"
    }
    cells: Dict[Tuple[int, float], List[ExperimentRecord]] = {}
    for r in records:
        if r.solver == exact:
            cells.setdefault((r.m, r.alpha), []).append(r)

    rows = []
    for (m, alpha), group in sorted(cells.items()):
        ordered = sorted(group, key=lambda r: (r.bippol, r.rep))
        picks = (ordered[0], ordered[(len(ordered) - 1) // 2], ordered[-1])
        ratios = []
        for pick in picks:
            ls = ls_by_key.get((alpha, m, pick.rep))
            ratios.append(ls.ls_ratio if ls is not None else None)
        rows.append(
            QualityRow(
                m=m,
                alpha=alpha,
                bippol=Spread(*(pick.bippol for pick in picks)),
                ls_ratio=(ratios[0], ratios[1], ratios[2]),
            )
        )
    return rows


def format_quality_table(rows: Sequence[QualityRow]) -> str:
    """文本形式的解质量表"""

    def ratio(value: Optional[float]) -> str:
        return "-" if value is None else f"{value:.4f}"

    lines = ["   m      α   BipPol(min / med / max)            LS 比值(min / med / max)"]
    for row in rows:
        lines.append(
            f"{row.m:4d} {row.alpha:6.2f}   "
            f"{row.bippol.min:.4f} / {row.bippol.median:.4f} / {row.bippol.max:.4f}   "
            f"{' / '.join(ratio(r) for r in row.ls_ratio)}"
        )
    return "\n".join(lines)


def emit_plot(summary: Sequence[CellSummary], path: PathLike) -> None:
    """绘制 α-耗时、α-搜索节点数（对数纵轴）与 α-BipPol 曲线，每个 m 一条，输出静态 SVG

    每条曲线的 SVG 分组 id 为 time-m<m>、nodes-m<m>、bippol-m<m>。
    """
    solver = _exact_solver(list(dict.fromkeys(cell.solver for cell in summary)))
    if solver is None and summary:
        solver = summary[0].solver
    cells = [cell for cell in summary if cell.solver == solver]
    sizes = sorted({cell.m for cell in cells})

    with matplotlib.rc_context({"svg.hashsalt": "polarize", "svg.fonttype": "none"}):
        fig = Figure(figsize=(13, 4))
        ax_time, ax_nodes, ax_pol = fig.subplots(1, 3)
        for m in sizes:
            series = sorted((cell for cell in cells if cell.m == m), key=lambda cell: cell.alpha)
            alphas = [cell.alpha for cell in series]
            ax_time.plot(
                alphas,
                [max(cell.time_ms.median, MIN_PLOT_TIME_MS) for cell in series],
                marker="o",
                label=f"m={m}",
                gid=f"time-m{m}",
            )
            ax_nodes.plot(
                alphas,
                [max(cell.search_nodes.median, MIN_PLOT_NODES) for cell in series],
                marker="o",
                label=f"m={m}",
                gid=f"nodes-m{m}",
            )
            ax_pol.plot(
                alphas,
                [cell.bippol.median for cell in series],
                marker="o",
                label=f"m={m}",
                gid=f"bippol-m{m}",
            )

        ax_time.set_yscale("log")
        ax_time.set_ylabel("median time (ms)")
        ax_nodes.set_yscale("log")
        ax_nodes.set_ylabel("median search nodes" if solver != "ls" else "median LS steps")
        ax_pol.set_ylabel("median BipPol")
        for ax in (ax_time, ax_nodes, ax_pol):
            ax.set_xlabel("alpha")
            ax.grid(True, which="both", alpha=0.3)
            if sizes:
                ax.legend()
        fig.suptitle(f"solver: {solver}")
        fig.tight_layout()

        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as e:
            raise OutputError(f"无法写入图像 {path}: {e.strerror}") from None
    logger.info(f"📈 曲线已写出到 {path}")
