"""
层势谱测试套件
==============

测试列表:
    - TestStaticLimits: k → 0⁺ 的静态谱
    - TestSmallKExpansions: 小 k 展开余项的收敛阶
    - TestSpectralIdentities: ζ 的两种表达、Dirichlet-Neumann 比值、η 递推
"""

from .test_static import TestStaticLimits
from .test_expansions import TestSmallKExpansions
from .test_identities import TestSpectralIdentities

__all__ = ["TestStaticLimits", "TestSmallKExpansions", "TestSpectralIdentities"]
