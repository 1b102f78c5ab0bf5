"""
介质测试套件
============

测试列表:
    - TestNondimensionalization: 物理参数到无量纲参数
    - TestFrequencyState: c(ω)、k 与 k₁
"""

from .test_medium import TestFrequencyState, TestNondimensionalization

__all__ = ["TestNondimensionalization", "TestFrequencyState"]
