"""
求解结果类型
"""

import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict

from ..model import Bipartition


@dataclass
class SolveStats:
    """搜索统计"""
    method: str
    search_nodes: int = 0
    steps: int = 0
    restarts: int = 0
    time_ms: float = 0.0
    optimal: bool = False
    timed_out: bool = False
    local_optimum: bool = False


@dataclass
class SolveResult:
    """求解结果：最优（或找到的最好）划分、其 BipPol 值与统计"""
    bipartition: Bipartition
    bippol: float
    stats: SolveStats = field(default_factory=lambda: SolveStats(method="unknown"))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.stats.method,
            "bippol": self.bippol,
            "assignment": self.bipartition.to_tags(),
            "stats": asdict(self.stats),
        }


class Stopwatch:
    """单调时钟计时（毫秒）"""

    def __init__(self):
        self._start = time.perf_counter()

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self._start) * 1000.0

    def elapsed_s(self) -> float:
        return time.perf_counter() - self._start
