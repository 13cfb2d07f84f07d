"""
命令行入口
polarize gen / solve / eval / debate / reduce / maxcut / bench

退出码: 0 成功；1 用法错误；2 输入校验错误；3 实验完成但有精确求解超时
机器可读输出写到 stdout，诊断信息写到 stderr
"""

import argparse
import json
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Callable, List, Optional

import numpy as np
from loguru import logger

from . import __version__
from .bench import (
    BenchBudget,
    GridSpec,
    emit_csv,
    emit_plot,
    format_quality_table,
    quality_table,
    run_matrix_sync,
    summarize,
)
from .config import configure_logging, get_config, load_config_file, set_config
from .debate import aggregate, load_debate_tree, propagate_sides
from .errors import AssignmentError, OutputError, PolarizeError, UsageError
from .generator import generate, make_gen_config
from .model import Bipartition, evaluate, load_instance, read_text, save_instance, write_text
from .reduction import load_maxcut, maxcut_bruteforce, reduce
from .solvers import SOLVERS, solve

EXIT_OK = 0
EXIT_TIMEOUT = 3

Handler = Callable[[argparse.Namespace], int]


class CliParser(argparse.ArgumentParser):
    """用法错误以退出码 1 结束"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: 错误: {message}\n")


def handle_cli_errors(operation: str) -> Callable[[Handler], Handler]:
    """把 PolarizeError 映射为退出码并在 stderr 给出诊断"""

    def decorator(func: Handler) -> Handler:
        @wraps(func)
        def wrapper(args: argparse.Namespace) -> int:
            try:
                return func(args)
            except PolarizeError as e:
                logger.error(f"❌ {operation}失败 - {e}")
                return e.exit_code
            except Exception as e:
                logger.exception(f"❌ {operation}出现未预期的错误: {e}")
                return 2

        return wrapper

    return decorator


def _default_seed(seed: Optional[int], what: str) -> int:
    if seed is None:
        seed = int(np.random.SeedSequence().entropy) % (2**64)
        logger.info(f"🎲 {what}未指定种子，使用 --seed {seed}")
    return seed


def _print_json(payload: Any) -> None:
    write_text("-", json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def _ensure_writable(path: str) -> None:
    """在开始计算前确认输出路径可写"""
    if path == "-":
        return
    target = Path(path)
    if target.is_dir():
        raise OutputError(f"输出路径是目录: {path}")
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"无法创建输出目录 {target.parent}: {e.strerror}") from None


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"应为逗号分隔的实数列表: {text!r}") from None


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"应为逗号分隔的整数列表: {text!r}") from None


def _name_list(text: str) -> List[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


@handle_cli_errors("生成实例")
def cmd_gen(args: argparse.Namespace) -> int:
    seed = _default_seed(args.seed, "生成器")
    cfg = make_gen_config(args.m, args.alpha, seed)
    _ensure_writable(args.output)
    g = generate(cfg)
    save_instance(g, args.output, meta={"generator": cfg.model_dump()})
    logger.success(f"✅ 已生成实例 m={cfg.m} α={cfg.alpha} seed={cfg.seed} -> {args.output}")
    return EXIT_OK


@handle_cli_errors("求解")
def cmd_solve(args: argparse.Namespace) -> int:
    if args.timeout_s is not None and args.timeout_s <= 0:
        raise UsageError(f"--timeout-s 必须 > 0，当前为 {args.timeout_s}")
    g = load_instance(args.instance)
    result = solve(g, args.method, seed=args.seed, timeout_s=args.timeout_s)
    if args.no_timing:
        result.stats.time_ms = 0.0
    if result.stats.timed_out:
        logger.warning("⏰ 求解超时，输出的是当前最好解")
    _print_json(result.to_dict())
    return EXIT_OK


def _load_assignment(path: str) -> Bipartition:
    try:
        tags = json.loads(read_text(path))
    except json.JSONDecodeError as e:
        raise AssignmentError(f"划分文件不是合法 JSON: {e}") from None
    if not isinstance(tags, list):
        raise AssignmentError("划分文件应为 \"L\"/\"R\" 组成的 JSON 数组")
    return Bipartition.from_tags(tags)


@handle_cli_errors("评估")
def cmd_eval(args: argparse.Namespace) -> int:
    g = load_instance(args.instance)
    p = _load_assignment(args.assignment)
    if len(p) != g.node_count:
        raise AssignmentError(f"划分有 {len(p)} 个标签，实例有 {g.node_count} 个节点")
    _print_json(evaluate(g, p).to_dict())
    return EXIT_OK


@handle_cli_errors("聚合辩论树")
def cmd_debate(args: argparse.Namespace) -> int:
    _ensure_writable(args.output)
    sdebt = propagate_sides(load_debate_tree(args.input))
    save_instance(aggregate(sdebt), args.output)
    return EXIT_OK


@handle_cli_errors("归约")
def cmd_reduce(args: argparse.Namespace) -> int:
    _ensure_writable(args.output)
    gc = load_maxcut(args.input)
    save_instance(reduce(gc), args.output, meta={"reduced_from": {"n": gc.n, "edges": gc.edge_count}})
    return EXIT_OK


@handle_cli_errors("暴力 maxcut")
def cmd_maxcut(args: argparse.Namespace) -> int:
    gc = load_maxcut(args.input)
    cut, sides = maxcut_bruteforce(gc)
    _print_json({"n": gc.n, "edges": gc.edge_count, "cut": cut, "sides": sides})
    return EXIT_OK


@handle_cli_errors("实验")
def cmd_bench(args: argparse.Namespace) -> int:
    settings = get_config().bench
    seed = _default_seed(args.seed, "实验网格")
    grid = GridSpec(
        alphas=tuple(args.alphas if args.alphas is not None else settings.alphas),
        sizes=tuple(args.sizes if args.sizes is not None else settings.sizes),
        replicates=args.reps if args.reps is not None else settings.replicates,
        seed=seed,
    )
    solvers = args.solvers if args.solvers is not None else settings.solvers
    budget = BenchBudget(timeout_s=args.timeout_s if args.timeout_s is not None else settings.timeout_s)
    _ensure_writable(args.out)
    if args.plot:
        _ensure_writable(args.plot)

    records = run_matrix_sync(grid, solvers, budget=budget, workers=args.workers, record_time=not args.no_timing)
    emit_csv(records, args.out)

    if records:
        table = quality_table(records)
        if table:
            logger.info("解质量对比:\n" + format_quality_table(table))
        if args.plot:
            emit_plot(summarize(records), args.plot)

    if any(record.timeout for record in records):
        logger.warning("⚠️ 部分精确求解超时，已在 timeout 列标记")
        return EXIT_TIMEOUT
    return EXIT_OK


def build_parser() -> CliParser:
    parser = CliParser(prog="polarize", description="辩论用户图的二分极化度工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="配置文件路径（覆盖默认搜索路径）")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    sub = parser.add_subparsers(dest="command", metavar="<command>")
    sub.required = True

    p = sub.add_parser("gen", help="按 (m, α, seed) 生成随机实例")
    p.add_argument("--m", type=int, required=True, help="节点数 (>= 2)")
    p.add_argument("--alpha", type=float, required=True, help="极化参数 α ∈ (0, 1]")
    p.add_argument("--seed", type=int, help="随机种子（缺省时随机选取并打印）")
    p.add_argument("-o", "--output", default="-", help="输出实例 JSON 路径，'-' 为标准输出")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("solve", help="求解实例的最大二分极化度")
    p.add_argument("instance", help="实例 JSON 路径，'-' 为标准输入")
    p.add_argument("--method", choices=SOLVERS, default="bnb", help="求解方法（默认 bnb）")
    p.add_argument("--seed", type=int, default=0, help="局部搜索 / 热启动的随机种子（默认 0）")
    p.add_argument("--timeout-s", type=float, help="分支定界的时间预算（秒）")
    p.add_argument("--no-timing", action="store_true", help="time_ms 记为 0，便于逐字节比较输出")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("eval", help="计算给定划分的 LC/RC/SC/SWeight/BipPol")
    p.add_argument("instance", help="实例 JSON 路径")
    p.add_argument("assignment", help="划分文件：按节点顺序的 \"L\"/\"R\" JSON 数组")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("debate", help="辩论树 JSON -> 用户辩论图实例 JSON")
    p.add_argument("--in", dest="input", required=True, help="辩论树 JSON 路径")
    p.add_argument("-o", "--output", default="-", help="输出实例 JSON 路径")
    p.set_defaults(handler=cmd_debate)

    p = sub.add_parser("reduce", help="maxcut 实例 -> 二分极化度实例")
    p.add_argument("--in", dest="input", required=True, help="maxcut 文本文件（首行 `n m`，其后每行 `u v`）")
    p.add_argument("-o", "--output", default="-", help="输出实例 JSON 路径")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("maxcut", help="暴力求解 maxcut（校验用）")
    p.add_argument("--in", dest="input", required=True, help="maxcut 文本文件")
    p.set_defaults(handler=cmd_maxcut)

    p = sub.add_parser("bench", help="运行 (α, m) 实验矩阵")
    p.add_argument("--alphas", type=_float_list, help="逗号分隔的 α 列表")
    p.add_argument("--sizes", type=_int_list, help="逗号分隔的 m 列表")
    p.add_argument("--reps", type=int, help="每个单元格的重复次数")
    p.add_argument("--seed", type=int, help="网格种子（缺省时随机选取并打印）")
    p.add_argument("--solvers", type=_name_list, help="逗号分隔的求解器列表，如 bnb,ls")
    p.add_argument("--timeout-s", type=float, help="单次精确求解的时间预算（秒）")
    p.add_argument("--out", default="-", help="结果 CSV 路径，'-' 为标准输出")
    p.add_argument("--plot", help="输出 SVG 曲线路径")
    p.add_argument("--workers", type=int, help="进程数（0 表示 CPU 核数）")
    p.add_argument("--no-timing", action="store_true", help="time_ms 记为 0，便于逐字节比较输出")
    p.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    try:
        if args.config:
            set_config(load_config_file(Path(args.config)))
    except (OSError, ValueError) as e:
        configure_logging(verbose=args.verbose)
        logger.error(f"❌ 无法加载配置文件 {args.config}: {e}")
        return UsageError.exit_code
    configure_logging(get_config().logging, verbose=args.verbose)

    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
