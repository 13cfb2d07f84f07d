"""
分支定界精确求解器

按 |s| 降序依次固定节点（先试与 s 符号一致的一侧），对部分划分使用可采纳上界:
    LC* = LC_已分配 + Σ_{未分配, s<=0} -s / |C|
    RC* = RC_已分配 + Σ_{未分配, s>0}  s / |C|
    SWeight* = (Σ_已固定跨侧边 -w + Σ_{至少一端未分配的边} max(-w, 0)) / |E| + 2
    bound = LC* · RC* · SWeight*
bound <= 当前最好解时剪枝；初始最好解来自局部搜索。
"""

import time
from typing import Callable, List, Optional, Sequence

from loguru import logger

from ..config import get_config
from ..model import Bipartition, Side, UDebG, evaluate, natural_side
from .base import SolveResult, SolveStats, Stopwatch
from .local_search import solve_ls

# observer(partial, bound, incumbent)：partial 中未分配节点为 None
Observer = Callable[[List[Optional[Side]], float, float], None]


class SearchTimeout(Exception):
    """内部使用：到达截止时间"""


def branching_order(g: UDebG) -> List[int]:
    """强观点节点优先"""
    return sorted(range(g.node_count), key=lambda v: (-abs(g.s[v]), v))


def upper_bound(g: UDebG, partial: Sequence[Optional[Side]]) -> float:
    """部分划分的可采纳上界（非增量版本）"""
    n = g.node_count
    if n == 0:
        return 0.0
    lc = rc = 0.0
    for s, side in zip(g.s, partial):
        if s <= 0:
            if side is not Side.R:
                lc -= s
        elif side is not Side.L:
            rc += s
    cross = 0.0
    for e in g.edges:
        a, b = partial[e.src], partial[e.dst]
        if a is None or b is None:
            cross += max(-e.w, 0.0)
        elif a is not b:
            cross -= e.w
    sweight = cross / g.edge_count + 2.0 if g.edge_count else 2.0
    return (lc / n) * (rc / n) * sweight


class _BranchAndBound:
    def __init__(self, g: UDebG, incumbent: Bipartition, incumbent_value: float,
                 deadline: Optional[float], check_interval: int, observer: Optional[Observer]):
        self.g = g
        self.n = g.node_count
        self.e = g.edge_count
        self.order = branching_order(g)
        self.natural = [natural_side(s) for s in g.s]
        self.weight = [abs(s) for s in g.s]
        # 每个节点的关联边: (另一端点, -w, max(-w, 0))
        self.adj = [[(u, -w, max(-w, 0.0)) for u, w in g.incident[v]] for v in range(self.n)]

        self.sides: List[Optional[Side]] = [None] * self.n
        self.lc_ub = sum(-s for s in g.s if s <= 0)
        self.rc_ub = sum(s for s in g.s if s > 0)
        self.cross = 0.0
        self.open_opt = sum(max(-e.w, 0.0) for e in g.edges)

        self.best = incumbent.copy()
        self.best_value = incumbent_value
        self.expanded = 0
        self.deadline = deadline
        self.check_interval = max(1, check_interval)
        self.observer = observer

    def bound(self) -> float:
        if self.n == 0:
            return 0.0
        sweight = (self.cross + self.open_opt) / self.e + 2.0 if self.e else 2.0
        return self.lc_ub * self.rc_ub / (self.n * self.n) * sweight

    def _assign(self, v: int, side: Side) -> None:
        if side is not self.natural[v]:
            if self.natural[v] is Side.L:
                self.lc_ub -= self.weight[v]
            else:
                self.rc_ub -= self.weight[v]
        sides = self.sides
        for u, neg_w, opt in self.adj[v]:
            other = sides[u]
            if other is not None:
                self.open_opt -= opt
                if other is not side:
                    self.cross += neg_w
        sides[v] = side

    def run(self, depth: int = 0) -> None:
        if self.deadline is not None and self.expanded % self.check_interval == 0:
            if time.perf_counter() >= self.deadline:
                raise SearchTimeout()

        bound = self.bound()
        if bound <= self.best_value:
            return
        self.expanded += 1
        if self.observer is not None:
            self.observer(list(self.sides), bound, self.best_value)

        if depth == self.n:
            # 叶子：上界即为该完整划分的值
            self.best_value = bound
            self.best = Bipartition(list(self.sides))
            return

        v = self.order[depth]
        first = self.natural[v]
        for side in (first, first.other):
            saved = (self.lc_ub, self.rc_ub, self.cross, self.open_opt)
            self._assign(v, side)
            self.run(depth + 1)
            self.sides[v] = None
            self.lc_ub, self.rc_ub, self.cross, self.open_opt = saved


def solve_bnb(
    g: UDebG,
    seed: int = 0,
    timeout_s: Optional[float] = None,
    observer: Optional[Observer] = None,
    warm_start: bool = True,
) -> SolveResult:
    """深度优先分支定界，返回最优划分

    timeout_s 为协作式截止时间；超时返回当前最好解，optimal=False、timed_out=True。
    """
    settings = get_config().solver
    watch = Stopwatch()
    m = g.node_count

    if warm_start and m > 0:
        seed_result = solve_ls(g, seed=seed)
        incumbent, incumbent_value = seed_result.bipartition, seed_result.bippol
    else:
        incumbent = Bipartition.all_left(m)
        incumbent_value = evaluate(g, incumbent).bippol

    deadline = time.perf_counter() + timeout_s if timeout_s is not None else None
    search = _BranchAndBound(g, incumbent, incumbent_value, deadline, settings.timeout_check_interval, observer)

    timed_out = False
    try:
        search.run()
    except SearchTimeout:
        timed_out = True
        logger.warning(f"分支定界超时 ({timeout_s}s)，已扩展 {search.expanded} 个节点")

    result = evaluate(g, search.best).bippol
    # 根节点总会计算上界，即使立即被剪枝也算一个节点
    nodes = max(search.expanded, 1) if m else 0
    stats = SolveStats(
        method="bnb",
        search_nodes=nodes,
        time_ms=watch.elapsed_ms(),
        optimal=not timed_out,
        timed_out=timed_out,
    )
    logger.debug(f"分支定界完成: m={m}, BipPol={result:.6f}, 扩展 {nodes} 个节点")
    return SolveResult(bipartition=search.best, bippol=result, stats=stats)
