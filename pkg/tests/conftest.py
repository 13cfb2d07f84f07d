from pathlib import Path

import pytest

from polarize.config import Config, DebugConfig, reset_config, set_config
from polarize.model import UDebG
from polarize.reduction import MaxcutGraph

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def strict_config():
    """测试期间开启 EvalCache 完整一致性校验，并隔离用户配置文件"""
    config = Config(debug=DebugConfig(strict_cache=True))
    set_config(config)
    yield config
    reset_config()


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def two_node() -> UDebG:
    return UDebG.build([("A", -1.0), ("B", 1.0)], [(0, 1, -2.0)])


@pytest.fixture
def k3() -> MaxcutGraph:
    return MaxcutGraph(n=3, edges=((0, 1), (1, 2), (0, 2)))
