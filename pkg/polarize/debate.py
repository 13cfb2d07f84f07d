"""
辩论树模块
读取评论树、按回复情感传播立场标签，并按作者聚合为用户辩论图
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

import networkx as nx
from loguru import logger
from pydantic import BaseModel, ValidationError

from .errors import DebateStructureError, MalformedInstanceError, ValueRangeError
from .model.graph import W_MAX, W_MIN, Edge, UDebG, UserNode


class CommentRecord(BaseModel):
    id: str
    author: str = ""
    parent: Optional[str] = None
    w: Optional[float] = None


class DebateDocument(BaseModel):
    root: str
    comments: List[CommentRecord] = []


@dataclass(frozen=True)
class Comment:
    id: str
    author: str
    parent: str
    w: float


@dataclass(frozen=True)
class DebateTree:
    """结构已校验的评论树（根评论 r 不在 comments 中）"""

    root: str
    comments: Tuple[Comment, ...]
    root_author: Optional[str] = None

    def as_digraph(self) -> nx.DiGraph:
        """父评论 -> 回复 的有向图"""
        graph = nx.DiGraph()
        graph.add_node(self.root)
        for c in self.comments:
            graph.add_edge(c.parent, c.id)
        return graph


@dataclass(frozen=True)
class SDebT:
    """带立场标签的辩论树"""

    tree: DebateTree
    sides: Mapping[str, int]

    def check_sides(self) -> bool:
        """一次遍历校验传播规则"""
        if self.sides.get(self.tree.root) != 1:
            return False
        for c in self.tree.comments:
            parent_side = self.sides[c.parent]
            expected = 1 if (parent_side == 1 and c.w > 0) or (parent_side == -1 and c.w <= 0) else -1
            if self.sides.get(c.id) != expected:
                return False
        return True


def build_tree(root: str, comments: List[CommentRecord]) -> DebateTree:
    """校验结构（唯一根、父评论存在、无环）并构造 DebateTree"""
    root_author = None
    root_seen = False
    seen = {root}
    checked: List[Comment] = []
    for record in comments:
        if record.parent is None:
            if record.id != root:
                raise DebateStructureError(f"评论 {record.id!r} 没有父评论，但根评论是 {root!r}（不支持多根）")
            if root_seen:
                raise DebateStructureError(f"评论 id 重复: {record.id!r}")
            root_seen = True
            root_author = record.author or None
            continue
        if record.id == root:
            raise DebateStructureError(f"根评论 {root!r} 不能有父评论")
        if record.id in seen:
            raise DebateStructureError(f"评论 id 重复: {record.id!r}")
        seen.add(record.id)
        if record.w is None:
            raise MalformedInstanceError(f"评论 {record.id!r} 缺少情感值 w")
        if not (W_MIN <= record.w <= W_MAX):
            raise ValueRangeError(f"评论 {record.id!r} 的 w={record.w} 不在 [-2, 2] 内", label=record.id)
        if not record.author:
            raise MalformedInstanceError(f"评论 {record.id!r} 缺少作者")
        checked.append(Comment(record.id, record.author, record.parent, float(record.w)))

    for c in checked:
        if c.parent not in seen:
            raise DebateStructureError(f"评论 {c.id!r} 的父评论 {c.parent!r} 不存在")

    tree = DebateTree(root=root, comments=tuple(checked), root_author=root_author)
    graph = tree.as_digraph()
    if not nx.is_arborescence(graph):
        try:
            cycle = nx.find_cycle(graph)
            path = " -> ".join(str(u) for u, _ in cycle)
            raise DebateStructureError(f"回复关系存在环: {path}")
        except nx.NetworkXNoCycle:
            raise DebateStructureError("评论无法全部追溯到根评论") from None
    return tree


def parse_debate_tree(text: str) -> DebateTree:
    try:
        doc = DebateDocument.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise MalformedInstanceError(f"辩论树 JSON 无效 ({where}): {first['msg']}") from None
    return build_tree(doc.root, doc.comments)


def load_debate_tree(path: Union[str, Path]) -> DebateTree:
    """读取辩论树 JSON"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInstanceError(f"无法读取 {path}: {e.strerror}") from None
    tree = parse_debate_tree(text)
    logger.debug(f"已加载辩论树 {path}: {len(tree.comments)} 条回复")
    return tree


def propagate_sides(tree: DebateTree) -> SDebT:
    """自根向下传播立场：S(r)=1；回复与父评论同立场当且仅当
    (父为 +1 且 W>0) 或 (父为 -1 且 W<=0)"""
    by_id = {c.id: c for c in tree.comments}
    sides: Dict[str, int] = {tree.root: 1}
    for parent, child in nx.bfs_edges(tree.as_digraph(), tree.root):
        w = by_id[child].w
        parent_side = sides[parent]
        agree = (parent_side == 1 and w > 0) or (parent_side == -1 and w <= 0)
        sides[child] = 1 if agree else -1
    return SDebT(tree=tree, sides=sides)


def aggregate(sdebt: SDebT) -> UDebG:
    """按作者聚合为用户辩论图

    节点按作者 id 排序；s 为该作者非根评论立场的均值。
    有向边 (i, j) 的 w 为 i 回复 j 的全部回复情感的均值；回复根评论与自我回复不产生边。
    """
    tree = sdebt.tree
    author_of = {c.id: c.author for c in tree.comments}

    author_sides: Dict[str, List[int]] = defaultdict(list)
    for c in tree.comments:
        author_sides[c.author].append(sdebt.sides[c.id])

    replies: Dict[Tuple[str, str], List[float]] = defaultdict(list)
    for c in tree.comments:
        if c.parent == tree.root:
            continue
        target = author_of[c.parent]
        if target == c.author:
            continue
        replies[(c.author, target)].append(c.w)

    authors = sorted(author_sides)
    index = {author: i for i, author in enumerate(authors)}
    nodes = tuple(
        UserNode(author, math.fsum(author_sides[author]) / len(author_sides[author]))
        for author in authors
    )
    edges = tuple(
        Edge(index[src], index[dst], math.fsum(ws) / len(ws))
        for (src, dst), ws in sorted(replies.items(), key=lambda item: (index[item[0][0]], index[item[0][1]]))
    )
    g = UDebG(nodes=nodes, edges=edges)
    logger.info(f"聚合完成: {len(tree.comments)} 条回复 -> {g.node_count} 个用户, {g.edge_count} 条交互边")
    return g
