"""
Minnaert 模态近似测试框架
=========================

使用方法:
    python -m tests                          # 运行所有测试
    python -m tests.run_all --suite spectra  # 只运行一个套件
    python -m tests.run_all --list-suites    # 列出套件

目录结构:
    tests/
    ├── core/           # 测试框架核心
    │   ├── base.py     # 基础测试类与数值断言
    │   ├── runner.py   # 测试运行器
    │   └── reporter.py # 报告生成器
    ├── suites/         # 测试套件（每个数值模块一个）
    ├── config.py       # 测试介质与参考场景
    └── reports/        # 测试报告

约定:
    1. 使用 BaseTest 类作为所有测试的基类
    2. 测试方法命名: test_<功能>_<场景>
    3. 数值比较用 assert_close / assert_allclose，并写明容差
"""

__version__ = "1.0.0"
__all__ = ["BaseTest", "TestRunner"]

from tests.core.base import BaseTest
from tests.core.runner import TestRunner
