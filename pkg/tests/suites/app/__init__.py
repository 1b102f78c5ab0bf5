"""
应用层测试套件
==============

测试列表:
    - TestRunConfig: YAML 配置、环境变量展开、校验与覆盖
    - TestEmit: CSV / JSON 输出格式
    - TestCli: 子命令退出码与输出文件
"""

from .test_config import TestRunConfig
from .test_emit import TestEmit
from .test_cli import TestCli

__all__ = ["TestRunConfig", "TestEmit", "TestCli"]
