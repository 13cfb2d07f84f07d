"""
debate-polarize
辩论用户图的二分极化度：精确与近似求解、随机实例生成、难度-极化度实验
"""

__version__ = "0.1.0"

from .errors import PolarizeError
from .model import Bipartition, PolarizationBreakdown, Side, UDebG, evaluate, load_instance, save_instance

__all__ = [
    "Bipartition",
    "PolarizationBreakdown",
    "PolarizeError",
    "Side",
    "UDebG",
    "__version__",
    "evaluate",
    "load_instance",
    "save_instance",
]
