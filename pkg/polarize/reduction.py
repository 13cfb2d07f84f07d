"""
maxcut 归约模块
把简单 maxcut 实例构造为二分极化度实例，并提供暴力 maxcut 作为精确求解器的端到端校验

归约: V 中每个顶点 s=0，另加锚点 u-(s=-1) 与 u+(s=+1)；
每条无向边 {a, b} 变为两条有向边 (a, b)、(b, a)，w 均为 -1/2。
"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import networkx as nx
from loguru import logger

from .errors import ContractViolation, MalformedInstanceError, MaxcutFormatError, SizeCapError
from .model import Bipartition, Side, UDebG
from .model.graph import Edge, UserNode
from .solvers import SolveResult

BRUTEFORCE_CAP = 20
REDUCED_WEIGHT = -0.5
ANCHOR_LEFT = "u-"
ANCHOR_RIGHT = "u+"


@dataclass(frozen=True)
class MaxcutGraph:
    """无向简单图，顶点为 0..n-1"""

    n: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in self.edges))
        if self.n < 0:
            raise MaxcutFormatError(f"顶点数不能为负: {self.n}")
        seen = set()
        for k, (a, b) in enumerate(self.edges):
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise MaxcutFormatError(f"第 {k} 条边 ({a}, {b}) 的端点超出 [0, {self.n})")
            if a == b:
                raise MaxcutFormatError(f"第 {k} 条边是自环: ({a}, {b})")
            pair = frozenset((a, b))
            if pair in seen:
                raise MaxcutFormatError(f"无向边重复: ({a}, {b})")
            seen.add(pair)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        degree = [0] * self.n
        for a, b in self.edges:
            degree[a] += 1
            degree[b] += 1
        return max(degree, default=0)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


def parse_maxcut(text: str) -> MaxcutGraph:
    """解析纯文本格式：首行 `n m`，其后每行一条边 `u v`（0 起始）；空行与 # 注释行忽略"""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise MaxcutFormatError("文件为空，缺少首行 `n m`")

    def ints(line: str, lineno: int) -> List[int]:
        parts = line.split()
        if len(parts) != 2:
            raise MaxcutFormatError(f"第 {lineno} 行应有两个整数: {line!r}")
        try:
            return [int(part) for part in parts]
        except ValueError:
            raise MaxcutFormatError(f"第 {lineno} 行不是整数: {line!r}") from None

    n, m = ints(lines[0], 1)
    edges = [tuple(ints(line, k + 2)) for k, line in enumerate(lines[1:])]
    if len(edges) != m:
        raise MaxcutFormatError(f"首行声明 {m} 条边，实际读到 {len(edges)} 条")
    return MaxcutGraph(n=n, edges=tuple(edges))  # type: ignore[arg-type]


def load_maxcut(path: Union[str, Path]) -> MaxcutGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInstanceError(f"无法读取 {path}: {e.strerror}") from None
    return parse_maxcut(text)


def reduce(gc: MaxcutGraph) -> UDebG:
    """构造归约实例；节点顺序为 v0..v{n-1}, u-, u+"""
    nodes = [UserNode(f"v{v}", 0.0) for v in range(gc.n)]
    nodes.append(UserNode(ANCHOR_LEFT, -1.0))
    nodes.append(UserNode(ANCHOR_RIGHT, 1.0))
    edges: List[Edge] = []
    for a, b in gc.edges:
        edges.append(Edge(a, b, REDUCED_WEIGHT))
        edges.append(Edge(b, a, REDUCED_WEIGHT))
    g = UDebG(nodes=tuple(nodes), edges=tuple(edges))
    logger.debug(f"归约: maxcut(n={gc.n}, |E|={gc.edge_count}) -> {g!r}")
    return g


def cut_value(gc: MaxcutGraph, sides: Sequence[int]) -> int:
    """穿过划分的边数；sides 为每个顶点的 0/1 标签"""
    return sum(1 for a, b in gc.edges if sides[a] != sides[b])


def maxcut_bruteforce(gc: MaxcutGraph, cap: int = BRUTEFORCE_CAP) -> Tuple[int, List[int]]:
    """Gray 码枚举全部划分，返回 (最大割值, 顶点 0/1 标签)"""
    n = gc.n
    if n > cap:
        raise SizeCapError(f"顶点数 {n} 超过暴力 maxcut 上限 {cap}")

    adjacency: List[List[int]] = [[] for _ in range(n)]
    for a, b in gc.edges:
        adjacency[a].append(b)
        adjacency[b].append(a)

    sides = [0] * n
    cut = 0
    best_cut = 0
    best_sides = list(sides)
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        same = sum(1 for u in adjacency[v] if sides[u] == sides[v])
        cut += 2 * same - len(adjacency[v])
        sides[v] ^= 1
        if cut > best_cut:
            best_cut = cut
            best_sides = list(sides)
    return best_cut, best_sides


def recover_cut(gc: MaxcutGraph, solved: SolveResult) -> int:
    """由归约实例的最优划分还原割值

    先把 u- 放到 L、u+ 放到 R（不会降低 BipPol），再统计 V 中跨侧的边。
    """
    sides = list(solved.bipartition.sides)
    if len(sides) != gc.n + 2:
        raise ContractViolation(f"划分长度 {len(sides)} 与归约实例节点数 {gc.n + 2} 不一致")
    sides[gc.n] = Side.L
    sides[gc.n + 1] = Side.R
    normalized = Bipartition(sides)
    return cut_value(gc, [1 if side is Side.R else 0 for side in normalized.sides[: gc.n]])


def expected_bippol(gc: MaxcutGraph, cut: int) -> float:
    """最大割为 cut 时归约实例的最优 BipPol

    (cut / (2|E|) + 2) / (n + 2)^2；无边时为 2 / (n + 2)^2。
    """
    size = gc.n + 2
    sweight = cut / (2 * gc.edge_count) + 2.0 if gc.edge_count else 2.0
    return sweight / (size * size)
