"""
二分极化度目标函数
提供完整评估 evaluate 与单节点翻转的 O(度数) 增量评估
"""

from dataclasses import asdict, dataclass
from typing import Dict, List, Optional

from ..config import get_config
from ..errors import StaleCacheError
from .graph import Bipartition, Side, UDebG


@dataclass(frozen=True)
class PolarizationBreakdown:
    """目标函数各分量"""
    lc: float
    rc: float
    sc: float
    sweight: float
    bippol: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def _combine(lc_num: float, rc_num: float, cross: float, n: int, e: int) -> PolarizationBreakdown:
    if n == 0:
        return PolarizationBreakdown(0.0, 0.0, 0.0, 2.0, 0.0)
    lc = lc_num / n
    rc = rc_num / n
    sc = lc * rc
    # 无边时 SWeight 取中性常数 2
    sweight = cross / e + 2.0 if e else 2.0
    return PolarizationBreakdown(lc=lc, rc=rc, sc=sc, sweight=sweight, bippol=sc * sweight)


def _numerators(g: UDebG, sides: List[Side]):
    lc_num = 0.0
    rc_num = 0.0
    for s, side in zip(g.s, sides):
        if side is Side.L:
            if s <= 0:
                lc_num -= s
        elif s > 0:
            rc_num += s
    cross = 0.0
    for e in g.edges:
        if sides[e.src] is not sides[e.dst]:
            cross -= e.w
    return lc_num, rc_num, cross


def evaluate(g: UDebG, p: Bipartition) -> PolarizationBreakdown:
    """计算划分 p 的 LC、RC、SC、SWeight 与 BipPol"""
    p.check_against(g)
    lc_num, rc_num, cross = _numerators(g, p.sides)
    return _combine(lc_num, rc_num, cross, g.node_count, g.edge_count)


def bippol(g: UDebG, p: Bipartition) -> float:
    return evaluate(g, p).bippol


class EvalCache:
    """增量评估缓存

    保存跨侧边的 -w 之和与 LC/RC 的分子，以及与之一致的划分快照。
    单一所有者，不可在线程间共享。
    """

    __slots__ = ("g", "sides", "lc_num", "rc_num", "cross", "_inv_n2", "_inv_e")

    def __init__(self, g: UDebG, sides: List[Side], lc_num: float, rc_num: float, cross: float):
        self.g = g
        self.sides = sides
        self.lc_num = lc_num
        self.rc_num = rc_num
        self.cross = cross
        n = g.node_count
        self._inv_n2 = 1.0 / (n * n) if n else 0.0
        self._inv_e = 1.0 / g.edge_count if g.edge_count else 0.0

    @classmethod
    def build(cls, g: UDebG, p: Bipartition) -> "EvalCache":
        p.check_against(g)
        sides = list(p.sides)
        lc_num, rc_num, cross = _numerators(g, sides)
        return cls(g, sides, lc_num, rc_num, cross)

    def _value(self, lc_num: float, rc_num: float, cross: float) -> float:
        return lc_num * rc_num * self._inv_n2 * (cross * self._inv_e + 2.0)

    def value(self) -> float:
        return self._value(self.lc_num, self.rc_num, self.cross)

    def breakdown(self) -> PolarizationBreakdown:
        return _combine(self.lc_num, self.rc_num, self.cross, self.g.node_count, self.g.edge_count)

    def _flipped(self, v: int):
        g = self.g
        sides = self.sides
        s = g.s[v]
        here = sides[v]
        lc_num, rc_num = self.lc_num, self.rc_num
        if here is Side.L:
            if s <= 0:
                lc_num += s
            else:
                rc_num += s
        else:
            if s <= 0:
                lc_num -= s
            else:
                rc_num -= s
        cross = self.cross
        for u, w in g.incident[v]:
            if sides[u] is here:
                cross -= w
            else:
                cross += w
        return lc_num, rc_num, cross

    def delta(self, v: int) -> float:
        """翻转节点 v 后 BipPol 的变化量（不修改缓存）"""
        return self._value(*self._flipped(v)) - self.value()

    def apply_flip(self, v: int, p: Optional[Bipartition] = None) -> None:
        """翻转节点 v，并同步更新传入的划分"""
        self.lc_num, self.rc_num, self.cross = self._flipped(v)
        self.sides[v] = self.sides[v].other
        if p is not None:
            p.flip(v)

    def validate(self, p: Bipartition, tol: float = 1e-9) -> None:
        """与 p 做完整一致性校验，不一致时抛出 StaleCacheError"""
        if self.sides != p.sides:
            raise StaleCacheError("缓存中的划分快照与当前划分不一致")
        lc_num, rc_num, cross = _numerators(self.g, self.sides)
        if (
            abs(lc_num - self.lc_num) > tol
            or abs(rc_num - self.rc_num) > tol
            or abs(cross - self.cross) > tol
        ):
            raise StaleCacheError(
                f"缓存分子漂移: lc {self.lc_num} vs {lc_num}, rc {self.rc_num} vs {rc_num}, "
                f"cross {self.cross} vs {cross}"
            )


def move_delta(g: UDebG, p: Bipartition, cached: EvalCache, v: int) -> float:
    """BipPol(p 翻转 v) - BipPol(p)，只访问 v 的关联边"""
    if cached.g is not g:
        raise StaleCacheError("缓存属于另一个实例")
    if len(p.sides) != len(cached.sides) or cached.sides[v] is not p.sides[v]:
        raise StaleCacheError(f"节点 {v} 的缓存侧与划分不一致")
    if get_config().debug.strict_cache:
        cached.validate(p)
    return cached.delta(v)
