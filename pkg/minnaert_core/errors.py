"""
异常定义
========

数值核心抛出的所有异常都继承自 MinnaertError，CLI 据此决定退出码。
"""
from typing import Optional


class MinnaertError(Exception):
    """所有库异常的基类"""


class DomainError(MinnaertError, ValueError):
    """参数落在函数定义域之外（Hankel 极点 z=0、c(ω) 极点 ω=0、气泡内部的观测点等）"""


class MediumError(DomainError):
    """介质参数不满足可容许条件"""


class ConfigError(MinnaertError, ValueError):
    """配置文件校验失败或扫描范围非法"""


class ConvergenceError(MinnaertError, RuntimeError):
    """迭代、求积或外推未达到要求的精度"""

    def __init__(self, message: str, achieved: Optional[float] = None):
        if achieved is not None:
            message = f"{message} (achieved error estimate {achieved:.3e})"
        super().__init__(message)
        self.achieved = achieved
