"""
穷举求解器
按 Gray 码顺序枚举全部 2^m 个划分，每步只翻转一个节点
"""

import time
from typing import Optional

from loguru import logger

from ..config import get_config
from ..errors import SizeCapError
from ..model import Bipartition, EvalCache, UDebG, evaluate
from .base import SolveResult, SolveStats, Stopwatch

TIE_EPS = 1e-12


def solve_exhaustive(g: UDebG, cap: Optional[int] = None, timeout_s: Optional[float] = None) -> SolveResult:
    """枚举全部划分（L/R 不对称，不做对称折半），返回最大 BipPol 的划分

    并列时取字典序最小的划分（L < R，节点 0 为最高位）。
    timeout_s 到期时返回已枚举部分中的最好解，optimal=False、timed_out=True。
    """
    settings = get_config().solver
    cap = settings.exhaustive_cap if cap is None else cap
    m = g.node_count
    if m > cap:
        raise SizeCapError(f"节点数 {m} 超过穷举上限 {cap}，请改用分支定界 (--method bnb)")

    watch = Stopwatch()
    deadline = time.perf_counter() + timeout_s if timeout_s is not None else None
    interval = max(1, settings.timeout_check_interval)
    current = Bipartition.all_left(m)
    cache = EvalCache.build(g, current)
    code = 0
    best_code = 0
    best_value = cache.value()
    total = 1 << m
    enumerated = 1
    timed_out = False

    for i in range(1, total):
        if deadline is not None and (i - 1) % interval == 0 and time.perf_counter() >= deadline:
            timed_out = True
            break
        bit = (i & -i).bit_length() - 1
        v = m - 1 - bit
        cache.apply_flip(v)
        code ^= 1 << bit
        enumerated += 1
        value = cache.value()
        # best_value 是严格的历史最大值，并列只影响 best_code
        if value > best_value + TIE_EPS:
            best_value = value
            best_code = code
        elif value >= best_value - TIE_EPS:
            if value > best_value:
                best_value = value
            if code < best_code:
                best_code = code

    best = Bipartition.from_code(best_code, m)
    result = evaluate(g, best).bippol
    stats = SolveStats(
        method="exhaustive",
        search_nodes=enumerated,
        time_ms=watch.elapsed_ms(),
        optimal=not timed_out,
        timed_out=timed_out,
    )
    if timed_out:
        logger.warning(f"穷举超时 ({timeout_s}s)，已枚举 {enumerated}/{total} 个划分")
    logger.debug(f"穷举完成: m={m}, BipPol={result:.6f}, 耗时 {stats.time_ms:.1f} ms")
    return SolveResult(bipartition=best, bippol=result, stats=stats)
