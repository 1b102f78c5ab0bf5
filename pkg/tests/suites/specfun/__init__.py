"""
球 Bessel 函数测试套件
======================

测试列表:
    - TestBesselValues: 与 mpmath 高精度值对比
    - TestBesselIdentities: 递推、导数与 Wronski 恒等式
"""

from .test_values import TestBesselValues
from .test_identities import TestBesselIdentities

__all__ = ["TestBesselValues", "TestBesselIdentities"]
