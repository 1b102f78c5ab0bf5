"""
场测试套件
==========

测试列表:
    - TestKupradze: Kupradze / Kelvin 矩阵、导数与级数切换
    - TestSphereHarmonics: 球谐正交性、面梯度与向量球谐
    - TestModalField: 场景校验、入射场、强迫项与模态散射场
"""

from .test_kernel import TestKupradze
from .test_harmonics import TestSphereHarmonics
from .test_modal import TestModalField

__all__ = ["TestKupradze", "TestSphereHarmonics", "TestModalField"]
