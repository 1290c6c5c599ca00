"""统一的异常层次。

每个异常类带有 ``exit_code``，命令行入口据此返回退出码:
0 成功，2 参数错误，3 预算/不可行错误。
"""


class SvpError(Exception):
    """所有领域错误的基类"""

    exit_code = 1


class ParameterError(SvpError, ValueError):
    """参数不合法"""

    exit_code = 2


class RankDeficiencyError(SvpError):
    """基线性相关 (Gram 行列式为 0)"""

    exit_code = 2


class LengthMismatchError(SvpError, ValueError):
    """比特串或参数长度不匹配"""

    exit_code = 2


class UnsupportedBoundError(SvpError):
    """编码方案不支持的系数界"""

    exit_code = 2


class InstabilityError(SvpError):
    """浮点 Gram-Schmidt 数值退化"""

    exit_code = 3


class BudgetExceededError(SvpError):
    """搜索节点数、盒子大小等预算超限"""

    exit_code = 3


class ReductionTimeoutError(BudgetExceededError):
    """约化超过截止时间"""


class QubitLimitError(BudgetExceededError):
    """态矢量所需量子比特数超过内存保护上限"""


class InfeasibleRadiusError(SvpError):
    """半径逐步放大后仍找不到非零格点"""

    exit_code = 3
