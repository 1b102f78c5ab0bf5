"""
求积校验测试套件
================

测试列表:
    - TestQuadratureOracle: 谱公式与直接面积分的逐族对照、扰动检测、汇总
"""

from .test_oracle import TestQuadratureOracle

__all__ = ["TestQuadratureOracle"]
