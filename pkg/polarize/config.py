import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger
from platformdirs import user_config_dir
from pydantic import BaseModel

APP_NAME = "polarize"
CONFIG_ENV = "POLARIZE_CONFIG"


class SolverConfig(BaseModel):
    """求解器配置"""
    exhaustive_cap: int = 24
    ls_restarts: int = 10
    improve_eps: float = 1e-12
    timeout_check_interval: int = 2048


class GeneratorConfig(BaseModel):
    """随机实例生成器配置"""
    rejection_max_tries: int = 100
    min_acceptance: float = 0.05


class BenchConfig(BaseModel):
    """实验矩阵配置"""
    alphas: List[float] = [0.05, 0.08, 0.11, 0.14, 0.4, 0.7, 1.0]
    sizes: List[int] = [25, 30, 35, 40]
    replicates: int = 50
    solvers: List[str] = ["bnb", "ls"]
    timeout_s: float = 60.0
    workers: int = 0


class LoggingConfig(BaseModel):
    """日志配置"""
    level: str = "INFO"
    log_to_file: bool = False
    log_file_path: str = ""
    max_file_size: int = 10485760
    backup_count: int = 5


class DebugConfig(BaseModel):
    """调试配置"""
    strict_cache: bool = False


class Config(BaseModel):
    """主配置类"""
    solver: SolverConfig = SolverConfig()
    generator: GeneratorConfig = GeneratorConfig()
    bench: BenchConfig = BenchConfig()
    logging: LoggingConfig = LoggingConfig()
    debug: DebugConfig = DebugConfig()
    version: str = "0.1.0"


def get_config_dir() -> Path:
    """获取用户配置目录"""
    return Path(user_config_dir(APP_NAME))


# 全局配置实例
_config: Optional[Config] = None


def _config_candidates() -> List[Path]:
    # 配置文件搜索优先级
    paths = []
    env_path = os.environ.get(CONFIG_ENV)
    if env_path:
        paths.append(Path(env_path))
    paths.append(get_config_dir() / "app_config.json")
    paths.append(Path.cwd() / "config" / "app_config.json")
    return paths


def load_config_file(config_file: Path) -> Config:
    """从指定文件加载配置"""
    with open(config_file, "r", encoding="utf-8") as f:
        config_data = json.load(f)
    return Config(**config_data)


def _load_config_from_file() -> Config:
    """按优先级搜索并加载配置文件"""
    for config_file in _config_candidates():
        if config_file.exists():
            try:
                config = load_config_file(config_file)
                logger.debug(f"配置已从 {config_file} 加载")
                return config
            except Exception as e:
                logger.warning(f"无法加载配置文件 {config_file}: {e}")
                continue

    logger.debug("未找到配置文件，使用默认配置")
    return Config()


def get_config() -> Config:
    """获取配置"""
    global _config
    if _config is None:
        _config = _load_config_from_file()
    return _config


def set_config(config: Config) -> None:
    """替换全局配置（命令行覆盖、测试）"""
    global _config
    _config = config


def reset_config() -> None:
    global _config
    _config = None


def configure_logging(settings: Optional[LoggingConfig] = None, verbose: bool = False) -> None:
    """安装日志输出：诊断信息走 stderr，stdout 留给机器可读输出"""
    settings = settings or get_config().logging
    level = "DEBUG" if verbose else settings.level.upper()

    logger.remove()
    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
    )

    if settings.log_to_file:
        log_path = Path(settings.log_file_path) if settings.log_file_path else get_config_dir() / "polarize.log"
        log_path.parent.mkdir(parents=True, exist_ok=True)
        logger.add(
            str(log_path),
            level=level,
            rotation=settings.max_file_size,
            retention=settings.backup_count,
            encoding="utf-8",
        )
