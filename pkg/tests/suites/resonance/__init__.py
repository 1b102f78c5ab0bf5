"""
共振测试套件
============

测试列表:
    - TestModalSymbol: 精确符号、一阶展开与截断符号
    - TestMinnaertResonance: 静态 / 一阶修正共振、共振半径、辐角原理
"""

from .test_symbol import TestModalSymbol
from .test_resonance import TestMinnaertResonance

__all__ = ["TestModalSymbol", "TestMinnaertResonance"]
