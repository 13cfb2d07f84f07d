"""
随机实例生成器
以单参数 α ∈ (0, 1] 控制期望极化度的 UDebG 随机实例

随机流布局（冻结，保证可复现）:
    SeedSequence(seed).spawn(2) -> [节点权重阶段, 边阶段]
    每个阶段再 spawn(m)，第 i 个子流只服务节点 i，
    因此任一节点的抽样与遍历顺序无关。位生成器为 PCG64。
节点权重阶段（节点 i 的子流）: 1 次均匀数选混合分量 + 1 次截断正态。
边阶段（节点 i 的子流）: 出度 k -> 无放回抽取 k 个目标 -> 按目标顺序抽取 k 个边权。
"""

import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy.special import ndtr
from scipy.stats import truncnorm

from .config import get_config
from .errors import GeneratorConfigError
from .model.graph import Edge, UDebG, UserNode

MIXTURE_WEIGHT = 0.5


class GenConfig(BaseModel):
    """生成器参数"""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=2)
    alpha: float = Field(gt=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)


def make_gen_config(m: int, alpha: float, seed: int = 0) -> GenConfig:
    """构造并校验生成器参数，非法时抛出 GeneratorConfigError"""
    try:
        return GenConfig(m=m, alpha=alpha, seed=seed)
    except ValidationError as e:
        first = e.errors()[0]
        field_name = ".".join(str(part) for part in first["loc"])
        raise GeneratorConfigError(f"{field_name}: {first['msg']}") from None


def derive_seed(grid_seed: int, *indices: int) -> int:
    """由网格种子与 (α 下标, m 下标, 重复下标) 派生单元格种子

    即 SeedSequence(entropy=grid_seed, spawn_key=indices) 的首个 uint64 状态字。
    """
    seq = np.random.SeedSequence(entropy=grid_seed, spawn_key=tuple(int(i) for i in indices))
    return int(seq.generate_state(1, dtype=np.uint64)[0])


def sample_truncnorm(
    rng: np.random.Generator,
    a: float,
    b: float,
    mu: float,
    sigma: float,
    max_tries: Optional[int] = None,
    min_acceptance: Optional[float] = None,
) -> float:
    """从 N(mu, sigma) 截断到 [a, b] 的分布中抽取一个样本

    mu、sigma 是截断前的母体参数。先做拒绝采样（有次数上限），
    接受率过低或超过上限时改用逆 CDF。
    """
    settings = get_config().generator
    max_tries = settings.rejection_max_tries if max_tries is None else max_tries
    min_acceptance = settings.min_acceptance if min_acceptance is None else min_acceptance

    lo = (a - mu) / sigma
    hi = (b - mu) / sigma
    acceptance = float(ndtr(hi) - ndtr(lo))

    if acceptance >= min_acceptance:
        for _ in range(max_tries):
            x = rng.normal(mu, sigma)
            if a <= x <= b:
                return float(x)

    x = mu + sigma * float(truncnorm.ppf(rng.random(), lo, hi))
    if not math.isfinite(x):
        # 极端尾部，质量集中在靠近 mu 的端点
        x = a if mu < a else b
    return min(max(x, a), b)


def side_weight_sigma(alpha: float) -> float:
    return 1.0 / (1.0 + 20.0 * alpha)


def same_side(s_i: float, s_j: float) -> bool:
    """同为正或同为 <= 0"""
    return (s_i > 0) == (s_j > 0)


def edge_mean(s_i: float, s_j: float) -> float:
    """边权截断正态的母体均值"""
    gap = abs(s_i - s_j)
    if same_side(s_i, s_j):
        return 2.0 * abs(s_i) - gap
    return -abs(s_i) * gap


def edge_sigma(mu: float) -> float:
    return 2.0 / (3.0 + 10.0 * abs(mu))


def max_out_degree(m: int) -> int:
    """出度上限 ⌈log10(m)⌉，至少为 1"""
    return max(1, math.ceil(math.log10(m)))


def sample_side_weight(rng: np.random.Generator, alpha: float) -> float:
    """等权混合 TN(-α, 0, -α, σ) 与 TN(0, α, α, σ)"""
    sigma = side_weight_sigma(alpha)
    if rng.random() < MIXTURE_WEIGHT:
        return sample_truncnorm(rng, -alpha, 0.0, -alpha, sigma)
    return sample_truncnorm(rng, 0.0, alpha, alpha, sigma)


def _node_streams(seed: int, m: int) -> List[List[np.random.Generator]]:
    phases = np.random.SeedSequence(seed).spawn(2)
    return [[np.random.Generator(np.random.PCG64(child)) for child in phase.spawn(m)] for phase in phases]


def _sample_targets(rng: np.random.Generator, i: int, m: int) -> List[int]:
    k_max = min(max_out_degree(m), m - 1)
    k = int(rng.integers(1, k_max + 1))
    candidates = [j for j in range(m) if j != i]
    picks = rng.choice(len(candidates), size=k, replace=False)
    return [candidates[int(p)] for p in picks]


def _generate_edges(streams: Sequence[np.random.Generator], s: Sequence[float]) -> List[Edge]:
    m = len(s)
    edges: List[Edge] = []
    for i, rng in enumerate(streams):
        for j in _sample_targets(rng, i, m):
            mu = edge_mean(s[i], s[j])
            w = sample_truncnorm(rng, -2.0, 2.0, mu, edge_sigma(mu))
            edges.append(Edge(i, j, w))
    return edges


def generate(cfg: GenConfig) -> UDebG:
    """按 (m, α, seed) 确定性地生成实例"""
    weight_streams, edge_streams = _node_streams(cfg.seed, cfg.m)
    s = [sample_side_weight(rng, cfg.alpha) for rng in weight_streams]
    edges = _generate_edges(edge_streams, s)
    width = len(str(cfg.m - 1))
    nodes = tuple(UserNode(f"u{i:0{width}d}", s_i) for i, s_i in enumerate(s))
    g = UDebG(nodes=nodes, edges=tuple(edges))
    logger.debug(f"生成实例 m={cfg.m} α={cfg.alpha} seed={cfg.seed}: {g.edge_count} 条边")
    return g
