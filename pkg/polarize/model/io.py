"""
实例 JSON 读写
格式: {"meta": {...}, "nodes": [{"id": "u1", "s": -0.75}], "edges": [{"src": 0, "dst": 3, "w": -1.25}]}
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ValidationError

from ..errors import MalformedInstanceError, OutputError
from .graph import Edge, UDebG, UserNode

PathLike = Union[str, Path]


class NodeRecord(BaseModel):
    id: str
    s: float


class EdgeRecord(BaseModel):
    src: int
    dst: int
    w: float


class InstanceDocument(BaseModel):
    """实例文件的结构；取值范围等领域约束由 UDebG 自身校验"""
    meta: Optional[Dict[str, Any]] = None
    nodes: List[NodeRecord]
    edges: List[EdgeRecord] = []


def parse_instance(text: str) -> Tuple[UDebG, Optional[Dict[str, Any]]]:
    """解析实例文本，返回图与可选的 meta"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInstanceError(f"JSON 解析失败: {e}") from None
    if not isinstance(raw, dict):
        raise MalformedInstanceError("顶层必须是 JSON 对象")
    try:
        doc = InstanceDocument.model_validate(raw)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise MalformedInstanceError(f"字段 {where}: {first['msg']}") from None

    g = UDebG(
        nodes=tuple(UserNode(node.id, node.s) for node in doc.nodes),
        edges=tuple(Edge(edge.src, edge.dst, edge.w) for edge in doc.edges),
    )
    return g, doc.meta


def read_text(path: PathLike) -> str:
    """读取文本，'-' 表示标准输入"""
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise MalformedInstanceError(f"无法读取 {path}: {e.strerror}") from None


def load_instance_document(path: PathLike) -> Tuple[UDebG, Optional[Dict[str, Any]]]:
    g, meta = parse_instance(read_text(path))
    logger.debug(f"已加载实例 {path}: {g.node_count} 个节点, {g.edge_count} 条边")
    return g, meta


def load_instance(path: PathLike) -> UDebG:
    """读取实例文件"""
    return load_instance_document(path)[0]


def dump_instance(g: UDebG, meta: Optional[Dict[str, Any]] = None) -> str:
    """序列化为 JSON 文本；浮点数使用 repr，保证往返精确"""
    doc: Dict[str, Any] = {}
    if meta is not None:
        doc["meta"] = meta
    doc["nodes"] = [{"id": node.id, "s": float(node.s)} for node in g.nodes]
    doc["edges"] = [{"src": e.src, "dst": e.dst, "w": float(e.w)} for e in g.edges]
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_text(path: PathLike, text: str) -> None:
    """写出文本，'-' 表示标准输出"""
    if str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
    except OSError as e:
        raise OutputError(f"无法写入 {path}: {e.strerror}") from None


def save_instance(g: UDebG, path: PathLike, meta: Optional[Dict[str, Any]] = None) -> None:
    """写出实例文件"""
    write_text(path, dump_instance(g, meta))
    logger.debug(f"实例已写入 {path}")
