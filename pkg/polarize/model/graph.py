"""
用户辩论图 (UDebG) 与二分划分的核心类型
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

from ..errors import (
    AssignmentError,
    ContractViolation,
    DuplicateEdgeError,
    DuplicateNodeError,
    EdgeIndexError,
    SelfLoopError,
    ValueRangeError,
)

S_MIN, S_MAX = -1.0, 1.0
W_MIN, W_MAX = -2.0, 2.0


class Side(str, Enum):
    """划分侧。L 按持反对意见的用户计分，R 按持赞同意见的用户计分，两者不可互换"""
    L = "L"
    R = "R"

    @property
    def other(self) -> "Side":
        return Side.R if self is Side.L else Side.L


def natural_side(s: float) -> Side:
    """与节点权重符号一致的一侧（s = 0 归入 L）"""
    return Side.L if s <= 0 else Side.R


@dataclass(frozen=True)
class UserNode:
    id: str
    s: float


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    w: float


@dataclass(frozen=True)
class UDebG:
    """用户辩论图

    构造后不可变，可在并发 worker 间共享。节点以稠密整数下标引用，
    `id` 仅作为外部标识。
    """

    nodes: Tuple[UserNode, ...]
    edges: Tuple[Edge, ...]
    # 派生结构：按下标的 s 值、每个节点的关联边 (另一端点, w)
    s: Tuple[float, ...] = field(init=False, repr=False, compare=False)
    incident: Tuple[Tuple[Tuple[int, float], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

        incident: List[List[Tuple[int, float]]] = [[] for _ in self.nodes]
        for e in self.edges:
            incident[e.src].append((e.dst, e.w))
            incident[e.dst].append((e.src, e.w))
        object.__setattr__(self, "s", tuple(node.s for node in self.nodes))
        object.__setattr__(self, "incident", tuple(tuple(adj) for adj in incident))

    def _validate(self) -> None:
        seen_ids = set()
        for node in self.nodes:
            if node.id in seen_ids:
                raise DuplicateNodeError(f"节点 id 重复: {node.id!r}")
            seen_ids.add(node.id)
            if not (S_MIN <= node.s <= S_MAX):
                raise ValueRangeError(f"节点 {node.id!r} 的 s={node.s} 不在 [-1, 1] 内", label=node.id)

        n = len(self.nodes)
        seen_pairs = set()
        for k, e in enumerate(self.edges):
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise EdgeIndexError(f"第 {k} 条边 ({e.src}, {e.dst}) 的端点下标超出 [0, {n})")
            label = f"{self.nodes[e.src].id}->{self.nodes[e.dst].id}"
            if e.src == e.dst:
                raise SelfLoopError(f"第 {k} 条边是自环: {label}")
            if (e.src, e.dst) in seen_pairs:
                raise DuplicateEdgeError(f"有向边重复: {label} ({e.src}, {e.dst})")
            seen_pairs.add((e.src, e.dst))
            if not (W_MIN <= e.w <= W_MAX):
                raise ValueRangeError(f"边 {label} 的 w={e.w} 不在 [-2, 2] 内", label=label)

    @classmethod
    def build(cls, nodes: Iterable[Tuple[str, float]], edges: Iterable[Tuple[int, int, float]]) -> "UDebG":
        """由 (id, s) 与 (src, dst, w) 元组构造"""
        return cls(
            nodes=tuple(UserNode(str(node_id), float(s)) for node_id, s in nodes),
            edges=tuple(Edge(int(src), int(dst), float(w)) for src, dst, w in edges),
        )

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def index_of(self) -> Dict[str, int]:
        return {node.id: i for i, node in enumerate(self.nodes)}

    def out_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e.src == v)

    def permuted(self, order: Sequence[int]) -> "UDebG":
        """按 order 重排节点（order[k] 为新下标 k 处的旧下标）"""
        new_index = {old: new for new, old in enumerate(order)}
        return UDebG(
            nodes=tuple(self.nodes[old] for old in order),
            edges=tuple(Edge(new_index[e.src], new_index[e.dst], e.w) for e in self.edges),
        )

    def __repr__(self) -> str:
        return f"UDebG(nodes={self.node_count}, edges={self.edge_count})"


@dataclass
class Bipartition:
    """全体节点的一个 (L, R) 划分；可变，单一所有者"""

    sides: List[Side]

    @classmethod
    def all_left(cls, n: int) -> "Bipartition":
        return cls([Side.L] * n)

    @classmethod
    def natural(cls, g: UDebG) -> "Bipartition":
        return cls([natural_side(s) for s in g.s])

    @classmethod
    def from_tags(cls, tags: Iterable[str]) -> "Bipartition":
        sides = []
        for k, tag in enumerate(tags):
            try:
                sides.append(Side(tag))
            except ValueError:
                raise AssignmentError(f"第 {k} 个标签 {tag!r} 不是 \"L\" 或 \"R\"") from None
        return cls(sides)

    @classmethod
    def from_code(cls, code: int, n: int) -> "Bipartition":
        """由整数编码还原（节点 0 为最高位，0 表示 L）"""
        return cls([Side.R if (code >> (n - 1 - v)) & 1 else Side.L for v in range(n)])

    def to_tags(self) -> List[str]:
        return [side.value for side in self.sides]

    def code(self) -> int:
        value = 0
        for side in self.sides:
            value = (value << 1) | (side is Side.R)
        return value

    def flip(self, v: int) -> None:
        self.sides[v] = self.sides[v].other

    def copy(self) -> "Bipartition":
        return Bipartition(list(self.sides))

    def left(self) -> List[int]:
        return [v for v, side in enumerate(self.sides) if side is Side.L]

    def right(self) -> List[int]:
        return [v for v, side in enumerate(self.sides) if side is Side.R]

    def permuted(self, order: Sequence[int]) -> "Bipartition":
        return Bipartition([self.sides[old] for old in order])

    def check_against(self, g: UDebG) -> None:
        if len(self.sides) != g.node_count:
            raise ContractViolation(f"划分长度 {len(self.sides)} 与节点数 {g.node_count} 不一致")

    def __len__(self) -> int:
        return len(self.sides)
