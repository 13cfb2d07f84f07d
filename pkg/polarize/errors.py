"""
错误类型模块
统一的异常层级，每类错误对应一个 CLI 退出码
"""

from typing import Optional


class PolarizeError(Exception):
    """错误基类"""

    exit_code = 2
    kind = "错误"

    def __init__(self, message: str):
        self.message = message
        super().__init__(f"{self.kind}: {message}")


class UsageError(PolarizeError):
    """命令行用法错误"""

    exit_code = 1
    kind = "用法错误"


class InputValidationError(PolarizeError):
    """输入校验失败"""

    kind = "输入错误"


class MalformedInstanceError(InputValidationError):
    """实例 JSON 无法解析或结构不符"""

    kind = "实例格式错误"


class ValueRangeError(InputValidationError):
    """节点权重或边权超出取值范围"""

    kind = "取值越界"

    def __init__(self, message: str, label: Optional[str] = None):
        self.label = label
        super().__init__(message)


class SelfLoopError(InputValidationError):
    kind = "自环边"


class DuplicateEdgeError(InputValidationError):
    kind = "重复边"


class EdgeIndexError(InputValidationError):
    kind = "边端点越界"


class DuplicateNodeError(InputValidationError):
    kind = "重复节点"


class AssignmentError(InputValidationError):
    """划分文件内容非法"""

    kind = "划分错误"


class DebateStructureError(InputValidationError):
    """辩论树结构错误（环、多根、未知父评论等）"""

    kind = "辩论树结构错误"


class MaxcutFormatError(InputValidationError):
    kind = "maxcut 格式错误"


class GeneratorConfigError(InputValidationError):
    kind = "生成器参数错误"


class ContractViolation(PolarizeError, ValueError):
    """调用前置条件不满足"""

    kind = "契约违例"


class StaleCacheError(PolarizeError, AssertionError):
    """增量评估缓存与当前划分不一致"""

    kind = "缓存失效"


class SizeCapError(PolarizeError):
    """规模超过穷举上限"""

    kind = "规模超限"


class OutputError(PolarizeError):
    """输出路径不可写"""

    kind = "输出错误"
