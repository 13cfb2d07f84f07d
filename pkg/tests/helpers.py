"""测试用的随机实例构造"""

from typing import List, Optional

import numpy as np

from polarize.model import Bipartition, Side, UDebG
from polarize.reduction import MaxcutGraph


def random_graph(rng: np.random.Generator, m: int, density: float = 0.3, s_values: Optional[List[float]] = None) -> UDebG:
    """稠密度可控的随机 UDebG，s ∈ [-1, 1]、w ∈ [-2, 2]"""
    s = s_values if s_values is not None else [float(x) for x in rng.uniform(-1.0, 1.0, size=m)]
    edges = []
    for i in range(m):
        for j in range(m):
            if i != j and rng.random() < density:
                edges.append((i, j, float(rng.uniform(-2.0, 2.0))))
    return UDebG.build([(f"n{i}", s[i]) for i in range(m)], edges)


def random_bipartition(rng: np.random.Generator, m: int) -> Bipartition:
    return Bipartition([Side.R if bit else Side.L for bit in rng.integers(0, 2, size=m)])


def random_maxcut(rng: np.random.Generator, n: int, max_degree: int = 3, p: float = 0.5) -> MaxcutGraph:
    """度数不超过 max_degree 的随机简单图"""
    degree = [0] * n
    edges = []
    for a in range(n):
        for b in range(a + 1, n):
            if degree[a] < max_degree and degree[b] < max_degree and rng.random() < p:
                edges.append((a, b))
                degree[a] += 1
                degree[b] += 1
    return MaxcutGraph(n=n, edges=tuple(edges))
