"""
求解器模块
穷举（精确、小规模）、分支定界（精确）与带重启的最陡上升局部搜索（近似）
"""

from typing import Callable, Dict, Optional

from ..errors import UsageError
from ..model import UDebG
from .base import SolveResult, SolveStats, Stopwatch
from .bnb import branching_order, solve_bnb, upper_bound
from .exhaustive import solve_exhaustive
from .local_search import climb, solve_ls

SOLVERS = ("exhaustive", "bnb", "ls")
EXACT_SOLVERS = ("exhaustive", "bnb")


def solve(g: UDebG, method: str, seed: int = 0, timeout_s: Optional[float] = None) -> SolveResult:
    """按名称分派求解器"""
    runners: Dict[str, Callable[[], SolveResult]] = {
        "exhaustive": lambda: solve_exhaustive(g, timeout_s=timeout_s),
        "bnb": lambda: solve_bnb(g, seed=seed, timeout_s=timeout_s),
        "ls": lambda: solve_ls(g, seed=seed),
    }
    if method not in runners:
        raise UsageError(f"未知求解方法 {method!r}，可选: {', '.join(SOLVERS)}")
    return runners[method]()


__all__ = [
    "EXACT_SOLVERS",
    "SOLVERS",
    "SolveResult",
    "SolveStats",
    "Stopwatch",
    "branching_order",
    "climb",
    "solve",
    "solve_bnb",
    "solve_exhaustive",
    "solve_ls",
    "upper_bound",
]
