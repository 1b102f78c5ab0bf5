"""
时域测试套件
============

测试列表:
    - TestPulse: 脉冲、Fourier 变换与频带外能量
    - TestResidue: 时间窗、留数闭式与围道积分、方向约定
    - TestInverseTransform: 截断逆变换的实值性、收敛失败与结构指标
    - TestRingdown: 真实场景下 P_ρ 与半圆弧闭合后和留数近似的比较
"""

from .test_pulse import TestPulse
from .test_residue import TestResidue
from .test_inverse import TestInverseTransform
from .test_ringdown import TestRingdown

__all__ = ["TestPulse", "TestResidue", "TestInverseTransform", "TestRingdown"]
