"""
模型模块
用户辩论图类型、二分极化度目标函数与实例读写
"""

from .graph import Bipartition, Edge, Side, UDebG, UserNode, natural_side
from .io import (
    dump_instance,
    load_instance,
    load_instance_document,
    parse_instance,
    read_text,
    save_instance,
    write_text,
)
from .objective import EvalCache, PolarizationBreakdown, bippol, evaluate, move_delta

__all__ = [
    "Bipartition",
    "Edge",
    "EvalCache",
    "PolarizationBreakdown",
    "Side",
    "UDebG",
    "UserNode",
    "bippol",
    "dump_instance",
    "evaluate",
    "load_instance",
    "load_instance_document",
    "move_delta",
    "natural_side",
    "parse_instance",
    "read_text",
    "save_instance",
    "write_text",
]
