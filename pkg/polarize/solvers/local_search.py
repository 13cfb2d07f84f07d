"""
局部搜索求解器
最陡上升爬山 + 随机重启；邻域为单节点翻转，增量评估每步 O(m · 度数)
"""

from typing import Optional

import numpy as np
from loguru import logger

from ..config import get_config
from ..model import Bipartition, EvalCache, Side, UDebG, evaluate
from .base import SolveResult, SolveStats, Stopwatch


def _random_bipartition(rng: np.random.Generator, m: int) -> Bipartition:
    coins = rng.random(m)
    return Bipartition([Side.R if c < 0.5 else Side.L for c in coins])


def climb(g: UDebG, start: Bipartition, max_steps: int, eps: float):
    """从 start 出发做最陡上升，返回 (划分, 值, 步数, 是否到达局部最优)"""
    m = g.node_count
    p = start.copy()
    cache = EvalCache.build(g, p)
    steps = 0
    while steps < max_steps:
        best_v = -1
        best_delta = eps
        for v in range(m):
            d = cache.delta(v)
            if d > best_delta:
                best_delta = d
                best_v = v
        if best_v < 0:
            return p, cache.value(), steps, True
        cache.apply_flip(best_v, p)
        steps += 1

    # 步数用尽：再确认一次是否恰好已是局部最优
    at_optimum = all(cache.delta(v) <= eps for v in range(m))
    return p, cache.value(), steps, at_optimum


def solve_ls(
    g: UDebG,
    seed: int = 0,
    restarts: Optional[int] = None,
    max_steps: Optional[int] = None,
) -> SolveResult:
    """带重启的最陡上升局部搜索

    每次重启从均匀随机划分出发，最多 m 步，每步应用增益最大（> eps）的翻转，
    增益相同取下标最小者。各次重启的随机流由 SeedSequence(seed).spawn 派生。
    """
    settings = get_config().solver
    restarts = settings.ls_restarts if restarts is None else restarts
    eps = settings.improve_eps
    m = g.node_count
    max_steps = m if max_steps is None else max_steps

    watch = Stopwatch()
    best_p: Optional[Bipartition] = None
    best_value = -1.0
    best_local = False
    total_steps = 0

    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.Generator(np.random.PCG64(child))
        p, value, steps, local = climb(g, _random_bipartition(rng, m), max_steps, eps)
        total_steps += steps
        if value > best_value:
            best_p, best_value, best_local = p, value, local

    if best_p is None:
        best_p = Bipartition.all_left(m)
        best_local = True

    result = evaluate(g, best_p).bippol
    stats = SolveStats(
        method="ls",
        steps=total_steps,
        restarts=restarts,
        time_ms=watch.elapsed_ms(),
        optimal=False,
        local_optimum=best_local,
    )
    logger.debug(f"局部搜索完成: m={m}, BipPol={result:.6f}, 共 {total_steps} 步")
    return SolveResult(bipartition=best_p, bippol=result, stats=stats)
