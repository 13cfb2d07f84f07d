"""
实验矩阵运行器
(α, m, 重复) 网格上生成实例、调用各求解器并记录结果

单元格通过事件循环分发到进程池，结果按 (α, m, 重复, 求解器) 的固定顺序合并，
输出与调度顺序无关。
"""

import asyncio
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from ..config import Config, get_config, set_config
from ..errors import UsageError
from ..generator import derive_seed, generate, make_gen_config
from ..solvers import EXACT_SOLVERS, SOLVERS, SolveResult, solve


@dataclass(frozen=True)
class GridSpec:
    """实验网格"""
    alphas: Tuple[float, ...]
    sizes: Tuple[int, ...]
    replicates: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        object.__setattr__(self, "sizes", tuple(int(m) for m in self.sizes))
        if not self.alphas or not self.sizes:
            raise UsageError("α 与 m 列表均不能为空")
        if self.replicates < 1:
            raise UsageError(f"重复次数必须 >= 1，当前为 {self.replicates}")
        for alpha in self.alphas:
            if not (0.0 < alpha <= 1.0):
                raise UsageError(f"α={alpha} 不在 (0, 1] 内")
        for m in self.sizes:
            if m < 2:
                raise UsageError(f"m={m} 必须 >= 2")

    def cells(self) -> Iterator[Tuple[int, int, int, float, int, int]]:
        """按 (α 下标, m 下标, 重复) 顺序给出 (ai, mi, rep, α, m, 派生种子)"""
        for ai, alpha in enumerate(self.alphas):
            for mi, m in enumerate(self.sizes):
                for rep in range(self.replicates):
                    yield ai, mi, rep, alpha, m, derive_seed(self.seed, ai, mi, rep)

    @property
    def cell_count(self) -> int:
        return len(self.alphas) * len(self.sizes) * self.replicates


@dataclass(frozen=True)
class BenchBudget:
    """单次精确求解的时间预算（秒）"""
    timeout_s: float = 60.0

    def __post_init__(self):
        if self.timeout_s <= 0:
            raise UsageError(f"时间预算必须 > 0，当前为 {self.timeout_s}")


@dataclass
class ExperimentRecord:
    """一行实验记录；局部搜索行的 search_nodes 为爬山步数"""
    alpha: float
    m: int
    rep: int
    seed: int
    solver: str
    bippol: float
    ls_ratio: Optional[float]
    time_ms: float
    search_nodes: int
    timeout: bool = False


@dataclass(frozen=True)
class _CellTask:
    alpha: float
    m: int
    rep: int
    seed: int
    solvers: Tuple[str, ...]
    timeout_s: float
    record_time: bool
    config: Dict[str, Any] = field(default_factory=dict)


def ls_ratio(ls_value: float, exact_value: float) -> float:
    """局部搜索值 / 精确最优值，0/0 记为 1"""
    if exact_value == 0.0:
        return 1.0 if ls_value == 0.0 else float("inf")
    return ls_value / exact_value


def _effort(result: SolveResult) -> int:
    if result.stats.method == "ls":
        return result.stats.steps
    return result.stats.search_nodes


def _run_cell(task: _CellTask) -> List[ExperimentRecord]:
    """进程池 worker：生成实例并依次运行各求解器"""
    if task.config:
        set_config(Config.model_validate(task.config))

    g = generate(make_gen_config(task.m, task.alpha, task.seed))
    results = {name: solve(g, name, seed=task.seed, timeout_s=task.timeout_s) for name in task.solvers}

    reference = next((results[name] for name in task.solvers if name in EXACT_SOLVERS), None)
    records = []
    for name in task.solvers:
        result = results[name]
        ratio = None
        if name == "ls" and reference is not None and not reference.stats.timed_out:
            ratio = ls_ratio(result.bippol, reference.bippol)
        records.append(
            ExperimentRecord(
                alpha=task.alpha,
                m=task.m,
                rep=task.rep,
                seed=task.seed,
                solver=name,
                bippol=result.bippol,
                ls_ratio=ratio,
                time_ms=result.stats.time_ms if task.record_time else 0.0,
                search_nodes=_effort(result),
                timeout=result.stats.timed_out,
            )
        )
    return records


def _resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = get_config().bench.workers
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def _check_solvers(solvers: Sequence[str]) -> Tuple[str, ...]:
    names = tuple(solvers)
    if not names:
        raise UsageError("至少需要一个求解器")
    for name in names:
        if name not in SOLVERS:
            raise UsageError(f"未知求解器 {name!r}，可选: {', '.join(SOLVERS)}")
    if len(set(names)) != len(names):
        raise UsageError(f"求解器列表有重复: {', '.join(names)}")
    return names


async def run_matrix(
    grid: GridSpec,
    solvers: Sequence[str],
    budget: Optional[BenchBudget] = None,
    workers: Optional[int] = None,
    record_time: bool = True,
) -> List[ExperimentRecord]:
    """运行实验矩阵，返回按 (α, m, 重复, 求解器) 排序的全部记录

    超时的精确求解以 timeout=True 记录，从不丢弃。
    """
    names = _check_solvers(solvers)
    budget = budget or BenchBudget(timeout_s=get_config().bench.timeout_s)
    workers = _resolve_workers(workers)
    config_dump = get_config().model_dump()

    tasks = [
        _CellTask(alpha, m, rep, seed, names, budget.timeout_s, record_time, config_dump)
        for _, _, rep, alpha, m, seed in grid.cells()
    ]
    logger.info(f"🚀 开始实验: {grid.cell_count} 个实例 × {len(names)} 个求解器, {workers} 个进程")

    loop = asyncio.get_running_loop()
    if workers == 1:
        batches = [await loop.run_in_executor(None, _run_cell, task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [loop.run_in_executor(pool, _run_cell, task) for task in tasks]
            batches = await asyncio.gather(*futures)

    records = [record for batch in batches for record in batch]
    timeouts = sum(1 for record in records if record.timeout)
    if timeouts:
        logger.warning(f"⏰ {timeouts} 次精确求解超时 (预算 {budget.timeout_s}s)")
    logger.success(f"实验完成: 共 {len(records)} 条记录")
    return records


def run_matrix_sync(
    grid: GridSpec,
    solvers: Sequence[str],
    budget: Optional[BenchBudget] = None,
    workers: Optional[int] = None,
    record_time: bool = True,
) -> List[ExperimentRecord]:
    """run_matrix 的同步入口（命令行使用）"""
    return asyncio.run(run_matrix(grid, solvers, budget=budget, workers=workers, record_time=record_time))
