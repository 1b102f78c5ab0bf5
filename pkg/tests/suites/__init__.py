"""测试套件包"""
# 导入所有测试套件
from . import specfun
from . import medium
from . import spectra
from . import resonance
from . import fields
from . import oracle
from . import timedomain
from . import app

__all__ = ["specfun", "medium", "spectra", "resonance", "fields", "oracle", "timedomain", "app"]
